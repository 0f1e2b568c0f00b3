//! Relevant instantiation of a program, seeded from the answer set, the
//! query atom, and user-supplied extras.
//!
//! Grounding matches positive body literals against a growing atom universe
//! (starting from the seeds and fact heads), resolves comparisons and
//! arithmetic, and adds the head atoms of produced rules back to the
//! universe, to a fixpoint. A full instantiation over all constants is
//! available for oracle tests on tiny programs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::analysis::{check_safety, VarClass};
use crate::ast::{Atom, BodyElem, CmpOp, Head, Program, Rule, Substitution, Term};

/// Identifier of a ground rule: `r<source_index>` applied to the rule's
/// global-variable bindings in order of first occurrence, e.g. `r1(a,b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleId {
    pub source_index: usize,
    pub bindings: Vec<Term>,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.source_index)?;
        write_bindings(f, &self.bindings)
    }
}

/// Identifier of a ground aggregate: `agg<k>` where `k` numbers aggregate
/// occurrences in textual order, applied to the enclosing rule's bindings,
/// e.g. `agg1(0)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AggId {
    pub ordinal: usize,
    pub bindings: Vec<Term>,
}

impl fmt::Display for AggId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "agg{}", self.ordinal)?;
        write_bindings(f, &self.bindings)
    }
}

fn write_bindings(f: &mut fmt::Formatter<'_>, bindings: &[Term]) -> fmt::Result {
    if bindings.is_empty() {
        return Ok(());
    }
    write!(f, "(")?;
    for (i, t) in bindings.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{t}")?;
    }
    write!(f, ")")
}

/// One matched instance of an aggregate condition: the ground condition
/// atom, its integer weight, and the instantiated tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AggInstance {
    pub atom: Atom,
    pub weight: i64,
    pub tuple: Vec<Term>,
}

/// A ground aggregate. Local variables remain in the weight, tuple and
/// condition; `instances` holds their matches against the Herbrand base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundAggregate {
    pub id: AggId,
    pub weight: Term,
    pub tuple: Vec<Term>,
    pub condition: Atom,
    pub op: CmpOp,
    pub guard: i64,
    pub instances: Vec<AggInstance>,
}

impl fmt::Display for GroundAggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#sum{{{}", self.weight)?;
        for t in &self.tuple {
            write!(f, ",{t}")?;
        }
        write!(f, " : {}}} {} {}", self.condition, self.op, self.guard)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroundHead {
    Atom(Atom),
    Choice {
        lower: i64,
        upper: i64,
        atoms: Vec<Atom>,
    },
}

impl GroundHead {
    pub fn atoms(&self) -> &[Atom] {
        match self {
            GroundHead::Atom(a) => std::slice::from_ref(a),
            GroundHead::Choice { atoms, .. } => atoms,
        }
    }

    pub fn is_falsum(&self) -> bool {
        matches!(self, GroundHead::Choice { lower: 1, upper: 1, atoms } if atoms.is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundRule {
    pub id: RuleId,
    pub head: GroundHead,
    pub pos_body: BTreeSet<Atom>,
    pub neg_body: BTreeSet<Atom>,
    pub agg_body: Vec<AggId>,
}

impl GroundRule {
    /// Canonical rule text; aggregate bodies are rendered from `aggregates`.
    pub fn render(&self, aggregates: &BTreeMap<AggId, GroundAggregate>) -> String {
        let mut parts: Vec<String> = Vec::new();
        for a in &self.pos_body {
            parts.push(a.to_string());
        }
        for a in &self.neg_body {
            parts.push(format!("not {a}"));
        }
        for id in &self.agg_body {
            match aggregates.get(id) {
                Some(agg) => parts.push(agg.to_string()),
                None => parts.push(id.to_string()),
            }
        }
        let body = parts.join(", ");
        let head = match &self.head {
            GroundHead::Atom(a) => Some(a.to_string()),
            GroundHead::Choice { lower, upper, atoms } => {
                if self.head.is_falsum() {
                    None
                } else {
                    let list = atoms
                        .iter()
                        .map(Atom::to_string)
                        .collect::<Vec<_>>()
                        .join("; ");
                    Some(if atoms.is_empty() {
                        format!("{lower} {{ }} {upper}")
                    } else {
                        format!("{lower} {{ {list} }} {upper}")
                    })
                }
            }
        };
        match (head, body.is_empty()) {
            (Some(h), true) => format!("{h}."),
            (Some(h), false) => format!("{h} :- {body}."),
            (None, true) => ":- .".to_string(),
            (None, false) => format!(":- {body}."),
        }
    }
}

/// The instantiated program: rules sorted by identifier, the shared ground
/// aggregates with their instances, and the Herbrand base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: Vec<GroundRule>,
    pub aggregates: BTreeMap<AggId, GroundAggregate>,
    /// Seeds plus all head atoms of produced rules.
    pub universe: BTreeSet<Atom>,
    /// All ground atoms occurring in the rules, plus the seeds.
    pub base: BTreeSet<Atom>,
}

impl GroundProgram {
    /// Debug dump: one rule per line, sorted by id.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for rule in &self.rules {
            out.push_str(&format!("{}: {}\n", rule.id, rule.render(&self.aggregates)));
        }
        out
    }

    pub fn aggregate(&self, id: &AggId) -> &GroundAggregate {
        &self.aggregates[id]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GroundingMode {
    /// Seeded, positive-body matching instantiation.
    #[default]
    Relevant,
    /// Substitute global variables with all constants, in all possible ways.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundingOptions {
    pub mode: GroundingMode,
    /// Bound on fixpoint rounds that keep inventing new integer constants or
    /// deeper terms (arithmetic in rule heads).
    pub arith_depth: usize,
}

impl Default for GroundingOptions {
    fn default() -> Self {
        GroundingOptions {
            mode: GroundingMode::Relevant,
            arith_depth: 64,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroundError {
    #[error("rule {rule_id}: choice bound `{bound}` does not evaluate to an integer")]
    NonIntegerChoiceBound { rule_id: String, bound: String },
    #[error("rule {rule_id}: choice lower bound {lower} is negative")]
    NegativeChoiceLower { rule_id: String, lower: i64 },
    #[error("aggregate {agg}: weight for instance {atom} is not an integer")]
    NonIntegerWeight { agg: String, atom: String },
    #[error("aggregate {agg}: tuple is not ground after substitution")]
    NonGroundTuple { agg: String },
    #[error("grounding exceeded the arithmetic depth cap of {limit} rounds; the program keeps inventing new values")]
    DepthExceeded { limit: usize },
}

/// Computes the relevant (or full) instantiation of `program`.
pub fn instantiate(
    program: &Program,
    seed_atoms: &BTreeSet<Atom>,
    options: GroundingOptions,
) -> Result<GroundProgram, GroundError> {
    match options.mode {
        GroundingMode::Relevant => instantiate_relevant(program, seed_atoms, options.arith_depth),
        GroundingMode::Full => instantiate_full(program, seed_atoms),
    }
}

/// The set of ground atoms occurring in the ground rules, plus the seeds.
pub fn herbrand_base(ground_rules: &[GroundRule], seed_atoms: &BTreeSet<Atom>) -> BTreeSet<Atom> {
    let mut base = seed_atoms.clone();
    for rule in ground_rules {
        base.extend(rule.head.atoms().iter().cloned());
        base.extend(rule.pos_body.iter().cloned());
        base.extend(rule.neg_body.iter().cloned());
    }
    base
}

/// Matches an aggregate condition against `base`: one entry per substitution
/// of the local variables, with the weight evaluated to an integer.
pub fn aggregate_instances(
    condition: &Atom,
    weight: &Term,
    tuple: &[Term],
    agg_id: &AggId,
    base: &BTreeSet<Atom>,
) -> Result<Vec<AggInstance>, GroundError> {
    let mut out = Vec::new();
    for atom in base {
        if atom.predicate != condition.predicate || atom.arity() != condition.arity() {
            continue;
        }
        let mut sigma = Substitution::new();
        if !condition.unify(atom, &mut sigma) {
            continue;
        }
        let weight = weight
            .resolve(&sigma)
            .and_then(|t| t.as_int())
            .ok_or_else(|| GroundError::NonIntegerWeight {
                agg: agg_id.to_string(),
                atom: atom.to_string(),
            })?;
        let tuple = tuple
            .iter()
            .map(|t| t.resolve(&sigma))
            .collect::<Option<Vec<_>>>()
            .filter(|ts| ts.iter().all(Term::is_ground))
            .ok_or_else(|| GroundError::NonGroundTuple {
                agg: agg_id.to_string(),
            })?;
        out.push(AggInstance {
            atom: atom.clone(),
            weight,
            tuple,
        });
    }
    Ok(out)
}

/// For a rule whose head contains atoms of `interp`, the expanded normal
/// rules `atom :- body`, one per true head atom.
pub fn expand(rule: &GroundRule, interp: &BTreeSet<Atom>) -> Vec<GroundRule> {
    rule.head
        .atoms()
        .iter()
        .filter(|a| interp.contains(*a))
        .map(|a| GroundRule {
            id: rule.id.clone(),
            head: GroundHead::Atom(a.clone()),
            pos_body: rule.pos_body.clone(),
            neg_body: rule.neg_body.clone(),
            agg_body: rule.agg_body.clone(),
        })
        .collect()
}

/// Per-rule data shared by both grounding modes.
struct RuleInfo<'a> {
    rule: &'a Rule,
    globals: Vec<String>,
    pos: Vec<&'a Atom>,
    /// Positive literals containing variables; only these are matched
    /// against the universe. Syntactically ground literals never filter, so
    /// instantiation is the identity on ground input programs.
    pos_matching: Vec<&'a Atom>,
    /// (textual ordinal, aggregate) pairs.
    aggs: Vec<(usize, &'a crate::ast::Aggregate)>,
}

fn rule_infos(program: &Program) -> Vec<RuleInfo<'_>> {
    let mut ordinal = 0;
    program
        .rules
        .iter()
        .map(|rule| {
            let classes = match check_safety(rule) {
                Ok(info) => info.classes,
                // Unsafe rules ground to nothing; the pipeline rejects them
                // before grounding.
                Err(_) => BTreeMap::new(),
            };
            let globals: Vec<String> = rule
                .var_order()
                .into_iter()
                .filter(|v| classes.get(v) == Some(&VarClass::Global))
                .collect();
            let aggs = rule
                .aggregates()
                .map(|a| {
                    ordinal += 1;
                    (ordinal, a)
                })
                .collect();
            let pos: Vec<&Atom> = rule.pos_literals().collect();
            let pos_matching = pos.iter().copied().filter(|a| !a.is_ground()).collect();
            RuleInfo {
                rule,
                globals,
                pos,
                pos_matching,
                aggs,
            }
        })
        .collect()
}

/// Resolves the comparisons of a rule under `sigma`: `=` comparisons with
/// one unbound variable side bind it; everything ground is evaluated.
/// Returns false when a comparison is false or cannot be resolved.
fn resolve_comparisons(rule: &Rule, sigma: &mut Substitution) -> bool {
    let comparisons: Vec<_> = rule.comparisons().collect();
    let mut pending: Vec<bool> = vec![true; comparisons.len()];
    loop {
        let mut progress = false;
        for (i, cmp) in comparisons.iter().enumerate() {
            if !pending[i] {
                continue;
            }
            let left = cmp.left.resolve(sigma);
            let right = cmp.right.resolve(sigma);
            match (left, right) {
                (Some(l), Some(r)) if l.is_ground() && r.is_ground() => {
                    if !cmp.op.compare(&l, &r) {
                        return false;
                    }
                    pending[i] = false;
                    progress = true;
                }
                _ if cmp.op == CmpOp::Eq => {
                    // Try grounding-time binding through equality.
                    let bound = match (&cmp.left, &cmp.right) {
                        (Term::Var(v), other) if !sigma.contains_key(v) => other
                            .resolve(sigma)
                            .filter(Term::is_ground)
                            .map(|t| (v.clone(), t)),
                        (other, Term::Var(v)) if !sigma.contains_key(v) => other
                            .resolve(sigma)
                            .filter(Term::is_ground)
                            .map(|t| (v.clone(), t)),
                        _ => None,
                    };
                    if let Some((v, t)) = bound {
                        sigma.insert(v, t);
                        pending[i] = false;
                        progress = true;
                    }
                }
                _ => {}
            }
        }
        if !progress {
            break;
        }
    }
    pending.iter().all(|p| !p)
}

/// Builds the ground rule for `info` under the fully bound `sigma`, or
/// `None` when arithmetic fails or an aggregate guard is not an integer
/// (such instances can never have a true body and are dropped).
fn build_ground_rule(
    info: &RuleInfo<'_>,
    sigma: &Substitution,
) -> Result<Option<(GroundRule, Vec<GroundAggregate>)>, GroundError> {
    let bindings: Vec<Term> = {
        let mut b = Vec::with_capacity(info.globals.len());
        for v in &info.globals {
            match sigma.get(v) {
                Some(t) => b.push(t.clone()),
                None => return Ok(None),
            }
        }
        b
    };
    let id = RuleId {
        source_index: info.rule.source_index,
        bindings: bindings.clone(),
    };

    let head = match &info.rule.head {
        Head::Atom(a) => match a.resolve(sigma) {
            Some(a) if a.is_ground() => GroundHead::Atom(a),
            _ => return Ok(None),
        },
        Head::Choice(c) => {
            let eval_bound = |t: &Term| -> Result<i64, GroundError> {
                t.resolve(sigma)
                    .and_then(|t| t.as_int())
                    .ok_or_else(|| GroundError::NonIntegerChoiceBound {
                        rule_id: id.to_string(),
                        bound: t.to_string(),
                    })
            };
            let lower = eval_bound(&c.lower)?;
            let upper = eval_bound(&c.upper)?;
            if lower < 0 {
                return Err(GroundError::NegativeChoiceLower {
                    rule_id: id.to_string(),
                    lower,
                });
            }
            let mut atoms = Vec::new();
            for a in &c.atoms {
                match a.resolve(sigma) {
                    Some(a) if a.is_ground() => atoms.push(a),
                    _ => return Ok(None),
                }
            }
            atoms.sort();
            atoms.dedup();
            GroundHead::Choice { lower, upper, atoms }
        }
    };

    let mut pos_body = BTreeSet::new();
    for a in &info.pos {
        match a.resolve(sigma) {
            Some(a) if a.is_ground() => {
                pos_body.insert(a);
            }
            _ => return Ok(None),
        }
    }
    let mut neg_body = BTreeSet::new();
    for a in info.rule.neg_literals() {
        match a.resolve(sigma) {
            Some(a) if a.is_ground() => {
                neg_body.insert(a);
            }
            _ => return Ok(None),
        }
    }

    let mut agg_body = Vec::new();
    let mut aggregates = Vec::new();
    for (ordinal, agg) in &info.aggs {
        let guard = match agg.guard.resolve(sigma).and_then(|t| t.as_int()) {
            Some(g) => g,
            // A non-integer guard can never hold over integers; the whole
            // instance is vacuous.
            None => return Ok(None),
        };
        let agg_id = AggId {
            ordinal: *ordinal,
            bindings: bindings.clone(),
        };
        agg_body.push(agg_id.clone());
        aggregates.push(GroundAggregate {
            id: agg_id,
            weight: agg.weight.substitute(sigma),
            tuple: agg.tuple.iter().map(|t| t.substitute(sigma)).collect(),
            condition: agg.condition.substitute(sigma),
            op: agg.op,
            guard,
            instances: Vec::new(),
        });
    }

    Ok(Some((
        GroundRule {
            id,
            head,
            pos_body,
            neg_body,
            agg_body,
        },
        aggregates,
    )))
}

/// Backtracking match of the positive body against the universe, in body
/// order; invokes `emit` once per complete substitution.
fn match_positive<F>(
    pos: &[&Atom],
    universe: &BTreeSet<Atom>,
    sigma: &mut Substitution,
    emit: &mut F,
) -> Result<(), GroundError>
where
    F: FnMut(&Substitution) -> Result<(), GroundError>,
{
    match pos.split_first() {
        None => emit(sigma),
        Some((first, rest)) => {
            for candidate in universe {
                if candidate.predicate != first.predicate || candidate.arity() != first.arity() {
                    continue;
                }
                let mut extended = sigma.clone();
                if first.unify(candidate, &mut extended) {
                    match_positive(rest, universe, &mut extended, emit)?;
                }
            }
            Ok(())
        }
    }
}

fn term_depth(t: &Term) -> usize {
    match t {
        Term::Int(_) | Term::Const(_) | Term::Str(_) | Term::Var(_) => 1,
        Term::Func(_, args) => 1 + args.iter().map(term_depth).max().unwrap_or(0),
        Term::Arith(_, l, r) => 1 + term_depth(l).max(term_depth(r)),
    }
}

fn atom_depth(a: &Atom) -> usize {
    a.args.iter().map(term_depth).max().unwrap_or(0)
}

fn collect_int_constants(t: &Term, out: &mut BTreeSet<i64>) {
    match t {
        Term::Int(n) => {
            out.insert(*n);
        }
        Term::Func(_, args) => args.iter().for_each(|t| collect_int_constants(t, out)),
        Term::Arith(_, l, r) => {
            collect_int_constants(l, out);
            collect_int_constants(r, out);
        }
        _ => {}
    }
}

fn instantiate_relevant(
    program: &Program,
    seed_atoms: &BTreeSet<Atom>,
    arith_depth: usize,
) -> Result<GroundProgram, GroundError> {
    let infos = rule_infos(program);

    // Freshness tracking for the termination cap: integers and term depths
    // present in the program text and seeds are not fresh.
    let mut known_ints = BTreeSet::new();
    let mut max_depth = 0usize;
    for rule in &program.rules {
        for a in rule.head.atoms() {
            a.args.iter().for_each(|t| collect_int_constants(t, &mut known_ints));
            max_depth = max_depth.max(atom_depth(a));
        }
        for elem in &rule.body {
            match elem {
                BodyElem::Literal(l) => {
                    l.atom.args.iter().for_each(|t| collect_int_constants(t, &mut known_ints));
                    max_depth = max_depth.max(atom_depth(&l.atom));
                }
                BodyElem::Aggregate(agg) => {
                    collect_int_constants(&agg.weight, &mut known_ints);
                    collect_int_constants(&agg.guard, &mut known_ints);
                    agg.tuple.iter().for_each(|t| collect_int_constants(t, &mut known_ints));
                    agg.condition
                        .args
                        .iter()
                        .for_each(|t| collect_int_constants(t, &mut known_ints));
                    max_depth = max_depth.max(atom_depth(&agg.condition));
                }
                BodyElem::Comparison(c) => {
                    collect_int_constants(&c.left, &mut known_ints);
                    collect_int_constants(&c.right, &mut known_ints);
                }
            }
        }
        if let Head::Choice(c) = &rule.head {
            collect_int_constants(&c.lower, &mut known_ints);
            collect_int_constants(&c.upper, &mut known_ints);
        }
    }
    for a in seed_atoms {
        a.args.iter().for_each(|t| collect_int_constants(t, &mut known_ints));
        max_depth = max_depth.max(atom_depth(a));
    }

    let mut universe: BTreeSet<Atom> = seed_atoms.clone();
    for rule in &program.rules {
        if rule.is_fact() {
            if let Head::Atom(a) = &rule.head {
                if a.is_ground() {
                    universe.insert(a.clone());
                }
            }
        }
    }

    let mut produced: BTreeMap<(usize, Vec<Term>), (GroundRule, Vec<GroundAggregate>)> =
        BTreeMap::new();
    let mut fresh_rounds = 0usize;
    loop {
        let mut new_atoms: BTreeSet<Atom> = BTreeSet::new();
        let mut added_rule = false;
        for info in &infos {
            let mut sigma = Substitution::new();
            let mut emit = |sigma: &Substitution| -> Result<(), GroundError> {
                let mut sigma = sigma.clone();
                if !resolve_comparisons(info.rule, &mut sigma) {
                    return Ok(());
                }
                let key_bindings: Vec<Term> = match info
                    .globals
                    .iter()
                    .map(|v| sigma.get(v).cloned())
                    .collect::<Option<Vec<_>>>()
                {
                    Some(b) => b,
                    None => return Ok(()),
                };
                let key = (info.rule.source_index, key_bindings);
                if produced.contains_key(&key) {
                    return Ok(());
                }
                if let Some((rule, aggs)) = build_ground_rule(info, &sigma)? {
                    for a in rule.head.atoms() {
                        if !universe.contains(a) {
                            new_atoms.insert(a.clone());
                        }
                    }
                    produced.insert(key, (rule, aggs));
                    added_rule = true;
                }
                Ok(())
            };
            match_positive(&info.pos_matching, &universe, &mut sigma, &mut emit)?;
        }
        if new_atoms.is_empty() && !added_rule {
            break;
        }
        // A round is value-inventing when it produces an atom with an integer
        // (or term depth) not seen before; only such rounds count against the
        // cap, so long derivation chains over known constants stay legal.
        let mut fresh = false;
        for a in &new_atoms {
            let mut ints = BTreeSet::new();
            a.args.iter().for_each(|t| collect_int_constants(t, &mut ints));
            if ints.iter().any(|n| !known_ints.contains(n)) || atom_depth(a) > max_depth {
                fresh = true;
            }
            known_ints.extend(ints);
            max_depth = max_depth.max(atom_depth(a));
        }
        if fresh {
            fresh_rounds += 1;
            if fresh_rounds > arith_depth {
                return Err(GroundError::DepthExceeded { limit: arith_depth });
            }
        }
        universe.extend(new_atoms);
    }

    finalize(produced, seed_atoms, universe)
}

fn instantiate_full(
    program: &Program,
    seed_atoms: &BTreeSet<Atom>,
) -> Result<GroundProgram, GroundError> {
    let infos = rule_infos(program);

    // The constant pool: every constant leaf in the program and seeds.
    let mut pool: BTreeSet<Term> = BTreeSet::new();
    fn leaves(t: &Term, pool: &mut BTreeSet<Term>) {
        match t {
            Term::Int(_) | Term::Const(_) | Term::Str(_) => {
                pool.insert(t.clone());
            }
            Term::Func(_, args) => args.iter().for_each(|t| leaves(t, pool)),
            Term::Arith(_, l, r) => {
                leaves(l, pool);
                leaves(r, pool);
            }
            Term::Var(_) => {}
        }
    }
    let every_atom = |a: &Atom, pool: &mut BTreeSet<Term>| {
        a.args.iter().for_each(|t| leaves(t, pool));
    };
    for rule in &program.rules {
        for a in rule.head.atoms() {
            every_atom(a, &mut pool);
        }
        if let Head::Choice(c) = &rule.head {
            leaves(&c.lower, &mut pool);
            leaves(&c.upper, &mut pool);
        }
        for elem in &rule.body {
            match elem {
                BodyElem::Literal(l) => every_atom(&l.atom, &mut pool),
                BodyElem::Aggregate(agg) => {
                    leaves(&agg.weight, &mut pool);
                    leaves(&agg.guard, &mut pool);
                    agg.tuple.iter().for_each(|t| leaves(t, &mut pool));
                    every_atom(&agg.condition, &mut pool);
                }
                BodyElem::Comparison(c) => {
                    leaves(&c.left, &mut pool);
                    leaves(&c.right, &mut pool);
                }
            }
        }
    }
    for a in seed_atoms {
        every_atom(a, &mut pool);
    }
    let pool: Vec<Term> = pool.into_iter().collect();

    let mut produced: BTreeMap<(usize, Vec<Term>), (GroundRule, Vec<GroundAggregate>)> =
        BTreeMap::new();
    for info in &infos {
        let globals = &info.globals;
        if !globals.is_empty() && pool.is_empty() {
            // No constants to substitute; such rules ground to nothing.
            continue;
        }
        // Odometer over all assignments of globals to pool constants.
        let mut counters = vec![0usize; globals.len()];
        loop {
            let mut sigma = Substitution::new();
            for (v, &c) in globals.iter().zip(&counters) {
                sigma.insert(v.clone(), pool[c].clone());
            }
            if resolve_comparisons(info.rule, &mut sigma) {
                if let Some((rule, aggs)) = build_ground_rule(info, &sigma)? {
                    produced.entry((info.rule.source_index, rule.id.bindings.clone()))
                        .or_insert((rule, aggs));
                }
            }
            // Advance the odometer.
            let mut i = 0;
            loop {
                if i == counters.len() {
                    break;
                }
                counters[i] += 1;
                if counters[i] < pool.len() {
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
            if globals.is_empty() || i == counters.len() {
                break;
            }
        }
    }

    let universe: BTreeSet<Atom> = seed_atoms
        .iter()
        .cloned()
        .chain(
            produced
                .values()
                .flat_map(|(r, _)| r.head.atoms().iter().cloned()),
        )
        .collect();
    finalize(produced, seed_atoms, universe)
}

fn finalize(
    produced: BTreeMap<(usize, Vec<Term>), (GroundRule, Vec<GroundAggregate>)>,
    seed_atoms: &BTreeSet<Atom>,
    universe: BTreeSet<Atom>,
) -> Result<GroundProgram, GroundError> {
    let mut rules = Vec::with_capacity(produced.len());
    let mut aggregates: BTreeMap<AggId, GroundAggregate> = BTreeMap::new();
    for (_, (rule, aggs)) in produced {
        rules.push(rule);
        for agg in aggs {
            aggregates.insert(agg.id.clone(), agg);
        }
    }
    let base = herbrand_base(&rules, seed_atoms);
    for agg in aggregates.values_mut() {
        agg.instances = aggregate_instances(&agg.condition, &agg.weight, &agg.tuple, &agg.id, &base)?;
    }
    Ok(GroundProgram {
        rules,
        aggregates,
        universe,
        base,
    })
}
