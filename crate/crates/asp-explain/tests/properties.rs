//! Property tests: the canonical printer round-trips through the parser,
//! three-valued evaluation agrees with two-valued satisfaction on decided
//! interpretations, unfounded sets satisfy their defining conditions, and
//! the DAG JSON codec round-trips.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use asp_explain::ast::{
    Aggregate, ArithOp, Atom, BodyElem, Choice, CmpOp, Comparison, Head, Literal, Program, Rule,
    Term,
};
use asp_explain::prelude::*;
use asp_explain::semantics::{eval_head, satisfies_body, satisfies_head, TruthValue};

fn name_strategy() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9]{0,4}".prop_filter("`not` is a keyword", |s| s != "not")
}

fn term_strategy(with_vars: bool) -> BoxedStrategy<Term> {
    let mut leaves = vec![
        (-99i64..100).prop_map(Term::Int).boxed(),
        name_strategy().prop_map(Term::Const).boxed(),
        "[a-z0-9 ]{0,6}".prop_map(Term::Str).boxed(),
    ];
    if with_vars {
        leaves.push("[A-Z][a-z0-9]{0,3}".prop_map(Term::Var).boxed());
    }
    let leaf = proptest::strategy::Union::new(leaves);
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (name_strategy(), prop::collection::vec(inner.clone(), 1..3))
                .prop_map(|(name, args)| Term::Func(name, args)),
            prop::collection::vec(inner.clone(), 2..4)
                .prop_map(|items| Term::Func(String::new(), items)),
            (
                prop_oneof![Just(ArithOp::Add), Just(ArithOp::Sub), Just(ArithOp::Mul)],
                inner.clone(),
                inner
            )
                .prop_map(|(op, l, r)| Term::Arith(op, Box::new(l), Box::new(r))),
        ]
    })
    .boxed()
}

/// Predicate names carry their arity so reuse can never clash.
fn atom_strategy(with_vars: bool) -> impl Strategy<Value = Atom> {
    (0usize..3, term_strategy(with_vars)).prop_flat_map(move |(arity, _)| {
        let names = ["pred", "quo", "rel"];
        let name = format!("{}{arity}", names[arity]);
        prop::collection::vec(term_strategy(with_vars), arity)
            .prop_map(move |args| Atom::new(name.clone(), args))
    })
}

fn cmp_strategy() -> impl Strategy<Value = CmpOp> {
    prop_oneof![
        Just(CmpOp::Eq),
        Just(CmpOp::Ne),
        Just(CmpOp::Lt),
        Just(CmpOp::Le),
        Just(CmpOp::Gt),
        Just(CmpOp::Ge),
    ]
}

fn body_elem_strategy() -> impl Strategy<Value = BodyElem> {
    prop_oneof![
        (atom_strategy(true), any::<bool>())
            .prop_map(|(atom, negated)| BodyElem::Literal(Literal { atom, negated })),
        (
            term_strategy(true),
            prop::collection::vec(term_strategy(true), 0..3),
            atom_strategy(true),
            cmp_strategy(),
            term_strategy(true)
        )
            .prop_map(|(weight, tuple, condition, op, guard)| {
                BodyElem::Aggregate(Aggregate {
                    weight,
                    tuple,
                    condition,
                    op,
                    guard,
                })
            }),
        (term_strategy(true), cmp_strategy(), term_strategy(true))
            .prop_map(|(left, op, right)| BodyElem::Comparison(Comparison { left, op, right })),
    ]
}

fn head_strategy() -> impl Strategy<Value = Head> {
    prop_oneof![
        atom_strategy(true).prop_map(Head::Atom),
        (
            term_strategy(true),
            term_strategy(true),
            prop::collection::vec(atom_strategy(true), 0..3)
        )
            .prop_map(|(lower, upper, atoms)| Head::Choice(Choice { lower, upper, atoms })),
    ]
}

fn program_strategy() -> impl Strategy<Value = Program> {
    prop::collection::vec(
        (head_strategy(), prop::collection::vec(body_elem_strategy(), 0..4)),
        0..6,
    )
    .prop_map(|rules| Program {
        rules: rules
            .into_iter()
            .enumerate()
            .map(|(i, (head, mut body))| {
                // A falsum head with an empty body has no printable form.
                if matches!(&head, Head::Choice(c) if c.is_falsum()) && body.is_empty() {
                    body.push(BodyElem::Literal(Literal {
                        atom: Atom::new("pred0", Vec::new()),
                        negated: false,
                    }));
                }
                Rule {
                    head,
                    body,
                    source_index: i + 1,
                }
            })
            .collect(),
    })
}

proptest! {
    /// The canonical printer is a right inverse of the parser.
    #[test]
    fn program_round_trips_through_printer(program in program_strategy()) {
        let rendered = program.to_string();
        let reparsed = parse_program(&rendered)
            .unwrap_or_else(|e| panic!("reparse failed: {e}\n{rendered}"));
        prop_assert_eq!(&program, &reparsed);
        prop_assert_eq!(rendered, reparsed.to_string());
    }

    /// Answer-set files of ground atoms parse back to the same set.
    #[test]
    fn answer_set_round_trips(atoms in prop::collection::btree_set(atom_strategy(false), 0..8)) {
        let text = atoms
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join("\n");
        let program = parse_program("").unwrap();
        let parsed = parse_answer_set(&text, &program).unwrap();
        prop_assert_eq!(atoms, parsed);
    }
}

#[test]
fn eval_agrees_with_satisfaction_when_decided() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe7a1);
    let mut cases = 0;
    while cases < 200 {
        let text = common::random_ground_program(&mut rng);
        let program = parse_program(&text).unwrap();
        if check_stratification(&program).is_err() {
            continue;
        }
        let ground = instantiate(&program, &BTreeSet::new(), GroundingOptions::default()).unwrap();
        cases += 1;
        let base_atoms: Vec<Atom> = ground.base.iter().cloned().collect();
        for _ in 0..5 {
            let interp: Interpretation = base_atoms
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .cloned()
                .collect();
            let tv = ThreeValued::new(interp.clone(), interp.clone());
            for rule in &ground.rules {
                assert_eq!(
                    eval_body(rule, &ground, &tv) == TruthValue::True,
                    satisfies_body(&interp, rule, &ground),
                    "body of {} at {interp:?}",
                    rule.id
                );
                assert_eq!(
                    eval_head(&rule.head, &tv) == TruthValue::True,
                    satisfies_head(&interp, &rule.head),
                    "head of {} at {interp:?}",
                    rule.id
                );
            }
        }
    }
}

#[test]
fn unfounded_sets_satisfy_their_conditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf00d);
    let mut cases = 0;
    while cases < 200 {
        let text = common::random_ground_program(&mut rng);
        let program = parse_program(&text).unwrap();
        if check_stratification(&program).is_err() {
            continue;
        }
        let ground = instantiate(&program, &BTreeSet::new(), GroundingOptions::default()).unwrap();
        cases += 1;
        let base_atoms: Vec<Atom> = ground.base.iter().cloned().collect();
        for _ in 0..3 {
            let lower: Interpretation = base_atoms
                .iter()
                .filter(|_| rng.gen_bool(0.3))
                .cloned()
                .collect();
            let upper: Interpretation = base_atoms
                .iter()
                .filter(|a| lower.contains(*a) || rng.gen_bool(0.5))
                .cloned()
                .collect();
            let tv = ThreeValued::new(lower, upper);
            let unfounded = find_unfounded_set(&tv, &ground);
            // Every member is undefined, and each rule satisfies one of the
            // three defining conditions.
            for atom in &unfounded {
                assert!(tv.is_undefined(atom));
            }
            for rule in &ground.rules {
                let no_head = !rule.head.atoms().iter().any(|a| unfounded.contains(a));
                let false_body = eval_body(rule, &ground, &tv) == TruthValue::False;
                let positive_overlap = !rule.pos_body.is_disjoint(&unfounded);
                assert!(
                    no_head || false_body || positive_overlap,
                    "unfounded conditions violated for {}",
                    rule.id
                );
            }
        }
    }
}

#[test]
fn dag_json_round_trips_on_random_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xda6);
    let mut cases = 0;
    while cases < 100 {
        let text = common::random_ground_program(&mut rng);
        let program = parse_program(&text).unwrap();
        if check_stratification(&program).is_err() {
            continue;
        }
        let ground = instantiate(&program, &BTreeSet::new(), GroundingOptions::default()).unwrap();
        if ground.base.is_empty() || ground.base.len() > 10 {
            continue;
        }
        let Some(answer) = oracle_answer_sets(&ground, 12).unwrap().into_iter().next() else {
            continue;
        };
        cases += 1;
        let wf = well_founded_derivation(&ground, &answer);
        let base_atoms: Vec<Atom> = ground.base.iter().cloned().collect();
        let alpha = base_atoms[rng.gen_range(0..base_atoms.len())].clone();
        let mas = minimal_assumption_set(&ground, &answer, &alpha, &wf);
        let (_, derivation) = assumption_derivation(&ground, &answer, &wf, &mas);
        let dag = build_dag(&derivation, &ground, &answer).unwrap();
        let json = to_json(&dag);
        let back = from_json(&json).unwrap();
        assert_eq!(dag, back);
    }
}

#[test]
fn dependency_graph_is_deterministic() {
    let text = "p(X) :- q(X), not r(X). q(a). 1 {r(a); r(b)} 1 :- q(a). s :- #sum{1,X : q(X)} > 0.";
    let first = dependency_graph(&parse_program(text).unwrap());
    let second = dependency_graph(&parse_program(text).unwrap());
    assert_eq!(first, second);
    assert!(first.edges.contains(&("p".into(), "q".into(), false)));
    assert!(first.edges.contains(&("s".into(), "q".into(), true)));
}
