//! Abstract syntax of the supported ASP fragment.
//!
//! A program is a set of safe rules `head :- body.` where the head is an atom
//! or a choice `l { a1; ...; an } u`, and the body mixes literals, `#sum`
//! aggregates and comparisons. Comparisons are grounding-time builtins and do
//! not survive into ground rules.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Arithmetic operators allowed inside terms; evaluated over integers at
/// grounding time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl ArithOp {
    pub fn apply(self, l: i64, r: i64) -> i64 {
        match self {
            ArithOp::Add => l.wrapping_add(r),
            ArithOp::Sub => l.wrapping_sub(r),
            ArithOp::Mul => l.wrapping_mul(r),
        }
    }

    fn precedence(self) -> u8 {
        match self {
            ArithOp::Add | ArithOp::Sub => 1,
            ArithOp::Mul => 2,
        }
    }
}

impl fmt::Display for ArithOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithOp::Add => write!(f, "+"),
            ArithOp::Sub => write!(f, "-"),
            ArithOp::Mul => write!(f, "*"),
        }
    }
}

/// Terms: integers, symbolic constants, quoted strings, variables,
/// function terms (an empty function name encodes a tuple `(a,b)`), and
/// arithmetic expressions.
///
/// The derived order (integers before symbols before strings before
/// functions) is the canonical term order used wherever the engine sorts
/// atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Int(i64),
    Const(String),
    Str(String),
    Func(String, Vec<Term>),
    Var(String),
    Arith(ArithOp, Box<Term>, Box<Term>),
}

/// A partial map from variable names to ground terms.
pub type Substitution = BTreeMap<String, Term>;

impl Term {
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Int(_) | Term::Const(_) | Term::Str(_) => true,
            Term::Var(_) => false,
            Term::Func(_, args) => args.iter().all(Term::is_ground),
            Term::Arith(_, l, r) => l.is_ground() && r.is_ground(),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Int(_) | Term::Const(_) | Term::Str(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Func(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Term::Arith(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    /// Applies a substitution; mapped variables are replaced, others remain.
    pub fn substitute(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Int(_) | Term::Const(_) | Term::Str(_) => self.clone(),
            Term::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Func(name, args) => Term::Func(
                name.clone(),
                args.iter().map(|t| t.substitute(sigma)).collect(),
            ),
            Term::Arith(op, l, r) => Term::Arith(
                *op,
                Box::new(l.substitute(sigma)),
                Box::new(r.substitute(sigma)),
            ),
        }
    }

    /// Evaluates every arithmetic subexpression. Returns `None` when a ground
    /// arithmetic operand is not an integer, or when variables remain inside
    /// an arithmetic expression.
    pub fn eval_arith(&self) -> Option<Term> {
        match self {
            Term::Int(_) | Term::Const(_) | Term::Str(_) | Term::Var(_) => Some(self.clone()),
            Term::Func(name, args) => {
                let args = args
                    .iter()
                    .map(Term::eval_arith)
                    .collect::<Option<Vec<_>>>()?;
                Some(Term::Func(name.clone(), args))
            }
            Term::Arith(op, l, r) => match (l.eval_arith()?, r.eval_arith()?) {
                (Term::Int(a), Term::Int(b)) => Some(Term::Int(op.apply(a, b))),
                _ => None,
            },
        }
    }

    /// Substitution followed by arithmetic evaluation.
    pub fn resolve(&self, sigma: &Substitution) -> Option<Term> {
        self.substitute(sigma).eval_arith()
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Term::Int(n) => Some(*n),
            _ => None,
        }
    }

    /// Matches this (possibly non-ground) term against a ground term,
    /// extending `sigma`. Arithmetic subterms must be fully bound by `sigma`;
    /// they are evaluated and compared rather than inverted.
    pub fn unify(&self, ground: &Term, sigma: &mut Substitution) -> bool {
        match self {
            Term::Var(v) => {
                if let Some(bound) = sigma.get(v) {
                    bound == ground
                } else {
                    sigma.insert(v.clone(), ground.clone());
                    true
                }
            }
            Term::Int(_) | Term::Const(_) | Term::Str(_) => self == ground,
            Term::Func(name, args) => match ground {
                Term::Func(gname, gargs) => {
                    name == gname
                        && args.len() == gargs.len()
                        && args.iter().zip(gargs).all(|(a, g)| a.unify(g, sigma))
                }
                _ => false,
            },
            Term::Arith(..) => match self.resolve(sigma) {
                Some(t) => &t == ground,
                None => false,
            },
        }
    }
}

impl fmt::Display for Term {
    /// Writes the canonical text; arithmetic subterms are parenthesized only
    /// when needed so the output round-trips through the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Term, f: &mut fmt::Formatter<'_>, parent: u8, right: bool) -> fmt::Result {
            match t {
                Term::Int(n) => write!(f, "{n}"),
                Term::Const(c) => write!(f, "{c}"),
                Term::Str(s) => write!(f, "\"{s}\""),
                Term::Var(v) => write!(f, "{v}"),
                Term::Func(name, args) => {
                    write!(f, "{name}(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        go(a, f, 0, false)?;
                    }
                    write!(f, ")")
                }
                Term::Arith(op, l, r) => {
                    let prec = op.precedence();
                    // All operators are left-associative, so a right child at
                    // equal precedence needs parens.
                    let need = prec < parent || (right && prec == parent);
                    if need {
                        write!(f, "(")?;
                    }
                    go(l, f, prec, false)?;
                    write!(f, "{op}")?;
                    go(r, f, prec, true)?;
                    if need {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self, f, 0, false)
    }
}

/// A predicate applied to terms. Arity is the argument count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        self.args.iter().for_each(|t| t.collect_vars(out));
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn substitute(&self, sigma: &Substitution) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|t| t.substitute(sigma)).collect(),
        }
    }

    /// Substitution plus arithmetic evaluation; `None` when arithmetic cannot
    /// be evaluated to an integer.
    pub fn resolve(&self, sigma: &Substitution) -> Option<Atom> {
        Some(Atom {
            predicate: self.predicate.clone(),
            args: self
                .args
                .iter()
                .map(|t| t.resolve(sigma))
                .collect::<Option<Vec<_>>>()?,
        })
    }

    pub fn unify(&self, ground: &Atom, sigma: &mut Substitution) -> bool {
        self.predicate == ground.predicate
            && self.args.len() == ground.args.len()
            && self.args.iter().zip(&ground.args).all(|(a, g)| a.unify(g, sigma))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// An atom, possibly under default negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "not {}", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

/// Comparison operators, shared by comparisons and aggregate guards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    /// Compares two ground terms. `=`/`!=` are structural; the ordering
    /// operators compare integers by value and otherwise fall back to the
    /// canonical term order.
    pub fn compare(self, left: &Term, right: &Term) -> bool {
        match self {
            CmpOp::Eq => left == right,
            CmpOp::Ne => left != right,
            CmpOp::Lt => left < right,
            CmpOp::Le => left <= right,
            CmpOp::Gt => left > right,
            CmpOp::Ge => left >= right,
        }
    }

    pub fn compare_ints(self, left: i64, right: i64) -> bool {
        self.compare(&Term::Int(left), &Term::Int(right))
    }
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        };
        write!(f, "{s}")
    }
}

/// A grounding-time builtin `left op right`. Comparisons never appear in
/// ground rule bodies; they restrict (and with `=` extend) the variable
/// bindings considered during instantiation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Comparison {
    pub left: Term,
    pub op: CmpOp,
    pub right: Term,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.left, self.op, self.right)
    }
}

/// A sum aggregate `#sum{weight,tuple : condition} op guard`. The condition
/// is a single positive atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Aggregate {
    pub weight: Term,
    pub tuple: Vec<Term>,
    pub condition: Atom,
    pub op: CmpOp,
    pub guard: Term,
}

impl fmt::Display for Aggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#sum{{{}", self.weight)?;
        for t in &self.tuple {
            write!(f, ",{t}")?;
        }
        write!(f, " : {}}} {} {}", self.condition, self.op, self.guard)
    }
}

/// A choice head `lower { atoms } upper`. The falsum head of a constraint is
/// the empty choice with bounds 1..1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Choice {
    pub lower: Term,
    pub upper: Term,
    pub atoms: Vec<Atom>,
}

impl Choice {
    pub fn falsum() -> Self {
        Choice {
            lower: Term::Int(1),
            upper: Term::Int(1),
            atoms: Vec::new(),
        }
    }

    pub fn is_falsum(&self) -> bool {
        self.atoms.is_empty() && self.lower == Term::Int(1) && self.upper == Term::Int(1)
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{ ", self.lower)?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{a}")?;
        }
        if self.atoms.is_empty() {
            write!(f, "}} {}", self.upper)
        } else {
            write!(f, " }} {}", self.upper)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Head {
    Atom(Atom),
    Choice(Choice),
}

impl Head {
    /// All atoms occurring in the head; empty for a constraint.
    pub fn atoms(&self) -> &[Atom] {
        match self {
            Head::Atom(a) => std::slice::from_ref(a),
            Head::Choice(c) => &c.atoms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BodyElem {
    Literal(Literal),
    Aggregate(Aggregate),
    Comparison(Comparison),
}

impl fmt::Display for BodyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyElem::Literal(l) => write!(f, "{l}"),
            BodyElem::Aggregate(a) => write!(f, "{a}"),
            BodyElem::Comparison(c) => write!(f, "{c}"),
        }
    }
}

/// One rule. `source_index` is the 1-based position in the program text and
/// determines the rule identifier family `r<index>(...)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Head,
    pub body: Vec<BodyElem>,
    pub source_index: usize,
}

impl Rule {
    pub fn is_fact(&self) -> bool {
        self.body.is_empty()
    }

    pub fn is_constraint(&self) -> bool {
        matches!(&self.head, Head::Choice(c) if c.is_falsum())
    }

    pub fn pos_literals(&self) -> impl Iterator<Item = &Atom> {
        self.body.iter().filter_map(|e| match e {
            BodyElem::Literal(l) if !l.negated => Some(&l.atom),
            _ => None,
        })
    }

    pub fn neg_literals(&self) -> impl Iterator<Item = &Atom> {
        self.body.iter().filter_map(|e| match e {
            BodyElem::Literal(l) if l.negated => Some(&l.atom),
            _ => None,
        })
    }

    pub fn aggregates(&self) -> impl Iterator<Item = &Aggregate> {
        self.body.iter().filter_map(|e| match e {
            BodyElem::Aggregate(a) => Some(a),
            _ => None,
        })
    }

    pub fn comparisons(&self) -> impl Iterator<Item = &Comparison> {
        self.body.iter().filter_map(|e| match e {
            BodyElem::Comparison(c) => Some(c),
            _ => None,
        })
    }

    /// Variables of the rule in order of first textual occurrence; rule
    /// identifiers bind them in this order.
    pub fn var_order(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut order = Vec::new();
        let push = |vars: BTreeSet<String>, order: &mut Vec<String>, seen: &mut BTreeSet<String>| {
            for v in vars {
                if seen.insert(v.clone()) {
                    order.push(v);
                }
            }
        };
        match &self.head {
            Head::Atom(a) => push(a.vars(), &mut order, &mut seen),
            Head::Choice(c) => {
                push(c.lower.vars(), &mut order, &mut seen);
                for a in &c.atoms {
                    push(a.vars(), &mut order, &mut seen);
                }
                push(c.upper.vars(), &mut order, &mut seen);
            }
        }
        for elem in &self.body {
            match elem {
                BodyElem::Literal(l) => push(l.atom.vars(), &mut order, &mut seen),
                BodyElem::Aggregate(a) => {
                    push(a.weight.vars(), &mut order, &mut seen);
                    for t in &a.tuple {
                        push(t.vars(), &mut order, &mut seen);
                    }
                    push(a.condition.vars(), &mut order, &mut seen);
                    push(a.guard.vars(), &mut order, &mut seen);
                }
                BodyElem::Comparison(c) => {
                    push(c.left.vars(), &mut order, &mut seen);
                    push(c.right.vars(), &mut order, &mut seen);
                }
            }
        }
        order
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head_text = match &self.head {
            Head::Choice(c) if c.is_falsum() => None,
            Head::Atom(a) => Some(a.to_string()),
            Head::Choice(c) => Some(c.to_string()),
        };
        match (&head_text, self.body.is_empty()) {
            (Some(h), true) => write!(f, "{h}."),
            (Some(h), false) => {
                write!(f, "{h} :- ")?;
                write_body(f, &self.body)?;
                write!(f, ".")
            }
            (None, _) => {
                write!(f, ":- ")?;
                write_body(f, &self.body)?;
                write!(f, ".")
            }
        }
    }
}

fn write_body(f: &mut fmt::Formatter<'_>, body: &[BodyElem]) -> fmt::Result {
    for (i, elem) in body.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{elem}")?;
    }
    Ok(())
}

/// A program: rules in source order, with `source_index` running 1, 2, ...
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    /// Every predicate occurring in the program, mapped to its arity.
    pub fn predicates(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        let record = |a: &Atom, out: &mut BTreeMap<String, usize>| {
            out.entry(a.predicate.clone()).or_insert(a.arity());
        };
        for rule in &self.rules {
            for a in rule.head.atoms() {
                record(a, &mut out);
            }
            for elem in &rule.body {
                match elem {
                    BodyElem::Literal(l) => record(&l.atom, &mut out),
                    BodyElem::Aggregate(agg) => record(&agg.condition, &mut out),
                    BodyElem::Comparison(_) => {}
                }
            }
        }
        out
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}
