//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use asp_explain::explain::Reason;
use asp_explain::ground::GroundRule;
use asp_explain::prelude::*;
use asp_explain::semantics::{eval_head, Falsity};

const REACH_LP: &str = include_str!("../data/reachability.lp");
const REACH_ANS: &str = include_str!("../data/reachability.ans");
const BLOCKS_LP: &str = include_str!("../data/blocksworld.lp");
const BLOCKS_ANS: &str = include_str!("../data/blocksworld.ans");

fn atom(s: &str) -> Atom {
    parse_ground_atom(s).unwrap()
}

fn reach_setup() -> (GroundProgram, Interpretation, ThreeValued) {
    let program = parse_program(REACH_LP).unwrap();
    let answer = parse_answer_set(REACH_ANS, &program).unwrap();
    let ground = instantiate(&program, &answer, GroundingOptions::default()).unwrap();
    let wf = well_founded_derivation(&ground, &answer);
    (ground, answer, wf)
}

fn reach_setup_full() -> (GroundProgram, Interpretation) {
    let program = parse_program(REACH_LP).unwrap();
    let answer = parse_answer_set(REACH_ANS, &program).unwrap();
    let ground = instantiate(
        &program,
        &answer,
        GroundingOptions {
            mode: GroundingMode::Full,
            ..GroundingOptions::default()
        },
    )
    .unwrap();
    (ground, answer)
}

fn pass(n: u32, what: &str) {
    println!("criterion {n}: PASS - {what}");
}

fn fail(n: u32, what: &str) -> String {
    let line = format!("criterion {n}: FAIL - {what}");
    println!("{line}");
    line
}

#[test]
fn criterion_1_reachability_golden_run() {
    let start = Instant::now();
    let (ground, answer, wf) = reach_setup();
    let alpha = atom("arc(a,b)");

    let mas = minimal_assumption_set(&ground, &answer, &alpha, &wf);
    assert!(mas.is_empty(), "minimal assumption set should be empty, got {mas:?}");

    let (_, derivation) = assumption_derivation(&ground, &answer, &wf, &mas);
    let expect_record = |subject: &str, reason: &str| {
        let record = derivation
            .find(&Subject::Atom(atom(subject)))
            .unwrap_or_else(|| panic!("no derivation record for {subject}"));
        assert_eq!(record.reason.to_string(), reason, "reason for {subject}");
    };
    expect_record("edge(a,b)", "(support, r6)");
    expect_record("arc(b,a)", "(support, r1(a,b))");
    expect_record("arc(a,b)", "(choice_rule, r1(a,b))");

    let dag = build_dag(&derivation, &ground, &answer).unwrap();
    let restricted = restrict_reachable(&dag, &alpha).unwrap();
    for (from, to) in [
        ("arc(b,a)", "edge(a,b)"),
        ("arc(a,b)", "arc(b,a)"),
        ("arc(a,b)", "edge(a,b)"),
    ] {
        assert!(
            restricted
                .links
                .contains(&(Subject::Atom(atom(from)), Subject::Atom(atom(to)))),
            "missing link {from} -> {to}"
        );
    }
    check_acyclic(&restricted).expect("restricted DAG must be acyclic");

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    pass(1, &format!(
        "empty assumption set, golden records and links, acyclic restricted DAG ({elapsed:?})"
    ));
}

#[test]
fn criterion_2_well_founded_bounds() {
    let (_, answer, wf) = reach_setup();
    let listed_lower = [
        "arc(b,a)", "arc(a,d)", "arc(d,c)", "reach(a,a)", "reach(b,b)", "reach(a,d)",
        "reach(a,c)", "reach(b,a)", "reach(b,c)", "reach(b,d)",
    ];
    let facts = [
        "edge(a,b)", "edge(a,d)", "edge(d,c)", "source(a)", "source(b)", "sink(c)",
        "threshold(0)",
    ];
    for a in listed_lower.iter().chain(&facts) {
        assert!(wf.lower.contains(&atom(a)), "lower bound misses {a}");
    }
    for a in ["arc(a,b)", "arc(d,a)", "arc(c,d)"] {
        assert!(wf.upper.contains(&atom(a)), "upper bound misses {a}");
        assert!(!wf.lower.contains(&atom(a)), "{a} must stay undefined");
    }
    assert_eq!(wf.lower, answer);
    pass(2, "well-founded lower bound covers the answer set; the three undirected arcs stay undefined");
}

#[test]
fn criterion_3_aggregate_evaluation() {
    let (ground, _, _) = reach_setup();
    let agg = ground
        .aggregates
        .values()
        .next()
        .expect("the threshold aggregate");
    let fail_ac = atom("fail(a,c)");
    let cases = [
        (Interpretation::new(), [fail_ac.clone()].into_iter().collect::<Interpretation>(), TruthValue::Undefined),
        ([fail_ac.clone()].into_iter().collect(), [fail_ac.clone()].into_iter().collect(), TruthValue::True),
        (Interpretation::new(), Interpretation::new(), TruthValue::False),
    ];
    for (lower, upper, expected) in cases {
        let tv = ThreeValued::new(lower, upper);
        assert_eq!(eval_aggregate(agg, &tv), expected);
    }
    pass(3, "aggregate evaluates to undefined/true/false at the three cited interpretations");
}

#[test]
fn criterion_4_inference_golden_values() {
    let (ground, answer) = reach_setup_full();
    let all_undefined = ThreeValued::new(Interpretation::new(), ground.base.clone());

    let false_atoms = infer_false(&all_undefined, &ground);
    assert!(
        false_atoms
            .iter()
            .any(|(a, f)| a == &atom("edge(a,a)") && *f == Falsity::LackOfSupport),
        "edge(a,a) must be inferred false by lack of support at (empty, base)"
    );
    println!("criterion 4a: PASS - edge(a,a) lack of support");

    let supported = infer_true_by_support(&all_undefined, &ground, &answer);
    assert!(
        supported.iter().any(|(a, _)| a == &atom("source(a)")),
        "source(a) must be inferred true by support at (empty, base)"
    );
    println!("criterion 4b: PASS - source(a) true by support");

    let unfounded = find_unfounded_set(&all_undefined, &ground);
    assert!(
        unfounded.contains(&atom("edge(a,a)")) && unfounded.contains(&atom("arc(a,a)")),
        "unfounded set at (empty, base) must contain edge(a,a) and arc(a,a)"
    );
    println!("criterion 4c: PASS - unfounded set contains edge(a,a) and arc(a,a)");

    // The second stated interpretation: arc(d,c) true, reach(a,c) false,
    // everything else undefined.
    let mut upper = ground.base.clone();
    upper.remove(&atom("reach(a,c)"));
    let tv = ThreeValued::new([atom("arc(d,c)")].into_iter().collect(), upper);
    let false_atoms = infer_false(&tv, &ground);
    assert!(
        false_atoms.iter().any(|(a, f)| a == &atom("reach(a,d)")
            && matches!(f, Falsity::RequiredToFalsifyBody(id) if id.source_index == 3)),
        "reach(a,d) must be inferred false by the recursion rule at the stated pair"
    );
    println!("criterion 4d: PASS - reach(a,d) constraint-like via the recursion rule");

    // At the stated pair the choice rule's body atom edge(d,c) is still
    // undefined, so under the documented inference conditions (a true body
    // is required) this inference cannot fire there; it fires one step
    // later, once the facts are true. Asserted as stated; see the decisions
    // ledger for the analysis.
    let fired = false_atoms.iter().any(|(a, f)| {
        a == &atom("arc(c,d)") && matches!(f, Falsity::ChoiceRule(id) if id.source_index == 1)
    });
    if fired {
        println!("criterion 4e: PASS - arc(c,d) choice rule at the stated pair");
        pass(4, "all inference golden values hold");
    } else {
        let line = fail(
            4,
            "arc(c,d) is not inferred false by the choice rule at the stated pair \
             ({arc(d,c)}, base minus reach(a,c)): the choice inference requires a true body, \
             but edge(d,c) is undefined there; the inference fires once the facts are true",
        );
        panic!("{line}");
    }
}

#[test]
fn criterion_5_universal_empty_assumption_sets() {
    let start = Instant::now();
    let (ground, answer, wf) = reach_setup();
    for alpha in &ground.base {
        let mas = minimal_assumption_set(&ground, &answer, alpha, &wf);
        assert!(mas.is_empty(), "assumption set for {alpha} should be empty, got {mas:?}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    pass(5, &format!(
        "minimal assumption set is empty for all {} base atoms ({elapsed:?})",
        ground.base.len()
    ));
}

/// Draws `(L, U) refined-by (L', U')` with `L ⊆ L' ⊆ A ⊆ U' ⊆ U`.
fn random_bound_pair(
    rng: &mut ChaCha8Rng,
    base: &Interpretation,
    answer: &Interpretation,
) -> (ThreeValued, ThreeValued) {
    let mut lower_fine = Interpretation::new();
    let mut lower_coarse = Interpretation::new();
    for a in answer {
        if rng.gen_bool(0.5) {
            lower_fine.insert(a.clone());
            if rng.gen_bool(0.5) {
                lower_coarse.insert(a.clone());
            }
        }
    }
    let mut upper_fine = answer.clone();
    let mut upper_coarse = answer.clone();
    for a in base.difference(answer) {
        if rng.gen_bool(0.5) {
            upper_fine.insert(a.clone());
            upper_coarse.insert(a.clone());
        } else if rng.gen_bool(0.5) {
            upper_coarse.insert(a.clone());
        }
    }
    (
        ThreeValued::new(lower_coarse, upper_coarse),
        ThreeValued::new(lower_fine, upper_fine),
    )
}

struct RandomCase {
    ground: GroundProgram,
    answer: Interpretation,
}

fn random_cases(count: usize) -> Vec<RandomCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cases = Vec::new();
    let mut attempts = 0;
    while cases.len() < count {
        attempts += 1;
        assert!(attempts < count * 100, "program generator starved");
        let text = common::random_ground_program(&mut rng);
        let program = parse_program(&text).unwrap();
        if check_stratification(&program).is_err() {
            continue;
        }
        let ground = instantiate(&program, &BTreeSet::new(), GroundingOptions::default()).unwrap();
        if ground.base.len() > 10 {
            continue;
        }
        let answer_sets = oracle_answer_sets(&ground, 12).unwrap();
        let Some(answer) = answer_sets.into_iter().next() else {
            continue;
        };
        cases.push(RandomCase { ground, answer });
    }
    cases
}

#[test]
fn criterion_6_property_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xbeef);
    let cases = random_cases(500);
    for (i, case) in cases.iter().enumerate() {
        let RandomCase { ground, answer } = case;
        let base = &ground.base;

        // (a) The derivation operator is monotone w.r.t. refinement.
        for _ in 0..5 {
            let (coarse, fine) = random_bound_pair(&mut rng, base, answer);
            assert!(coarse.refines_to(&fine));
            let stepped_coarse = explaining_step(&coarse, ground, answer);
            let stepped_fine = explaining_step(&fine, ground, answer);
            assert!(
                stepped_coarse.refines_to(&stepped_fine),
                "monotonicity violated on case {i}"
            );
            // (b) L ⊆ A ⊆ U is preserved.
            for stepped in [&stepped_coarse, &stepped_fine] {
                assert!(
                    stepped.lower.is_subset(answer) && answer.is_subset(&stepped.upper),
                    "answer-set sandwich violated on case {i}"
                );
            }
        }

        let wf = well_founded_derivation(ground, answer);

        // (c) The complement of the answer set is always an assumption set.
        let complement: AssumptionSet = base.difference(answer).cloned().collect();
        assert!(
            is_assumption_set(&complement, ground, answer, &wf),
            "complement assumption set rejected on case {i}"
        );

        // (d) The search finds an assumption set of exactly the exhaustive
        // minimum cost.
        let base_atoms: Vec<Atom> = base.iter().cloned().collect();
        let alpha = base_atoms[rng.gen_range(0..base_atoms.len())].clone();
        let mas = minimal_assumption_set(ground, answer, &alpha, &wf);
        assert!(
            is_assumption_set(&mas, ground, answer, &wf),
            "search returned a non-assumption set on case {i}"
        );
        let candidates: Vec<Atom> = base.difference(answer).cloned().collect();
        assert!(candidates.len() <= 12, "candidate pool too large for the oracle");
        let mut best: Option<(usize, usize)> = None;
        for mask in 0u32..(1 << candidates.len()) {
            let x: AssumptionSet = candidates
                .iter()
                .enumerate()
                .filter(|(j, _)| mask & (1 << j) != 0)
                .map(|(_, a)| a.clone())
                .collect();
            if is_assumption_set(&x, ground, answer, &wf) {
                let cost = (x.contains(&alpha) as usize, x.len());
                if best.map(|b| cost < b).unwrap_or(true) {
                    best = Some(cost);
                }
            }
        }
        let best = best.expect("an assumption set must exist");
        let got = (mas.contains(&alpha) as usize, mas.len());
        assert_eq!(got, best, "assumption-set cost not minimal on case {i}");

        // (e) The derivation reaches its fixpoint within |base| steps.
        let (_, derivation) = explaining_derivation(
            ThreeValued::new(Interpretation::new(), wf.upper.clone()),
            ground,
            answer,
        );
        assert!(
            derivation.steps <= base.len().max(1),
            "derivation took {} steps on case {i} with base {}",
            derivation.steps,
            base.len()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(6, &format!(
        "monotonicity, answer-set sandwich, complement assumption sets, exhaustive-minimum cost, \
         and step bounds hold on 500 random programs ({elapsed:?})"
    ));
}

/// Recomputes the expected out-neighborhood of every vertex from the ground
/// rules and the derivation, and compares link sets exactly.
fn check_dag_invariants(
    ground: &GroundProgram,
    answer: &Interpretation,
    derivation: &Derivation,
    dag: &ExplanationDag,
) {
    check_acyclic(dag).expect("DAG must be acyclic");

    let index_of = |s: &Subject| dag.vertices.get(s).map(|v| v.index);
    for (from, to) in &dag.links {
        let from_index = index_of(from).expect("link source must be a vertex");
        let to_index = index_of(to).expect("link target must be a vertex");
        assert!(
            to_index == 0 || to_index < from_index,
            "link target {to} not explained before {from}"
        );
    }

    let truth_of = |s: &Subject| dag.vertices.get(s).map(|v| v.truth);
    let body_subjects = |rule: &GroundRule| -> Vec<Subject> {
        rule.pos_body
            .iter()
            .cloned()
            .map(Subject::Atom)
            .chain(rule.neg_body.iter().cloned().map(Subject::Atom))
            .chain(rule.agg_body.iter().cloned().map(Subject::Aggregate))
            .collect()
    };

    for record in &derivation.records {
        let vertex = &record.subject;
        let out: BTreeSet<Subject> = dag
            .out_neighbors(vertex)
            .into_iter()
            .cloned()
            .collect();
        let expected: BTreeSet<Subject> = match (&record.subject, &record.reason) {
            (Subject::Aggregate(id), _) => ground
                .aggregate(id)
                .instances
                .iter()
                .map(|i| Subject::Atom(i.atom.clone()))
                .collect(),
            (_, Reason::Assumption | Reason::InitialWellFounded) => BTreeSet::new(),
            (_, Reason::Support(rule)) => {
                let id = match rule {
                    asp_explain::explain::ReasonRule::Rule(id) => id,
                    asp_explain::explain::ReasonRule::Aggregate(_) => unreachable!(),
                };
                let rule = ground.rules.iter().find(|r| &r.id == id).unwrap();
                body_subjects(rule).into_iter().collect()
            }
            (Subject::Atom(a), Reason::LackOfSupport) => {
                // Per rule with the atom in its head: the earliest falsified
                // body element, ties by text. An atom occurring both
                // positively and negatively qualifies through either role.
                let mut expected = BTreeSet::new();
                for rule in ground.rules.iter().filter(|r| r.head.atoms().contains(a)) {
                    let mut candidates: Vec<(Subject, bool)> = Vec::new();
                    for b in &rule.pos_body {
                        candidates.push((Subject::Atom(b.clone()), false));
                    }
                    for b in &rule.neg_body {
                        candidates.push((Subject::Atom(b.clone()), true));
                    }
                    for id in &rule.agg_body {
                        candidates.push((Subject::Aggregate(id.clone()), false));
                    }
                    let best = candidates
                        .into_iter()
                        .filter(|(s, want_truth)| {
                            truth_of(s) == Some(*want_truth)
                                && index_of(s).map(|i| i < record.index).unwrap_or(false)
                        })
                        .map(|(s, _)| s)
                        .min_by_key(|s| (index_of(s).unwrap(), s.to_string()));
                    expected.insert(best.expect("a falsified body element must exist"));
                }
                expected
            }
            (Subject::Atom(a), Reason::RequiredToFalsifyBody(id)) => {
                let rule = ground.rules.iter().find(|r| &r.id == id).unwrap();
                assert_eq!(eval_head(&rule.head, &ThreeValued::new(answer.clone(), answer.clone())), TruthValue::False);
                rule.head
                    .atoms()
                    .iter()
                    .cloned()
                    .map(Subject::Atom)
                    .chain(body_subjects(rule).into_iter().filter(|s| s != &Subject::Atom(a.clone())))
                    .collect()
            }
            (_, Reason::ChoiceRule(id)) => {
                let rule = ground.rules.iter().find(|r| &r.id == id).unwrap();
                rule.head
                    .atoms()
                    .iter()
                    .filter(|h| answer.contains(*h))
                    .cloned()
                    .map(Subject::Atom)
                    .chain(body_subjects(rule))
                    .collect()
            }
        };
        assert_eq!(
            out, expected,
            "out-neighborhood mismatch for {vertex} ({})",
            record.reason
        );
    }
}

#[test]
fn criterion_7_dag_structural_invariants() {
    let start = Instant::now();

    // Golden cases.
    let (ground, answer, wf) = reach_setup();
    for alpha in ["arc(a,b)", "fail(a,c)", "reach(a,b)"] {
        let mas = minimal_assumption_set(&ground, &answer, &atom(alpha), &wf);
        let (_, derivation) = assumption_derivation(&ground, &answer, &wf, &mas);
        let dag = build_dag(&derivation, &ground, &answer).unwrap();
        check_dag_invariants(&ground, &answer, &derivation, &dag);
        let restricted = restrict_reachable(&dag, &atom(alpha)).unwrap();
        check_acyclic(&restricted).unwrap();
    }

    // Random cases, same generation as the property suite.
    let mut rng = ChaCha8Rng::seed_from_u64(0xbeef);
    let cases = random_cases(500);
    for case in &cases {
        let RandomCase { ground, answer } = case;
        let wf = well_founded_derivation(ground, answer);
        let base_atoms: Vec<Atom> = ground.base.iter().cloned().collect();
        let alpha = base_atoms[rng.gen_range(0..base_atoms.len())].clone();
        let mas = minimal_assumption_set(ground, answer, &alpha, &wf);
        let (_, derivation) = assumption_derivation(ground, answer, &wf, &mas);
        let dag = build_dag(&derivation, ground, answer).unwrap();
        check_dag_invariants(ground, answer, &derivation, &dag);
        let restricted = restrict_reachable(&dag, &alpha).unwrap();
        check_acyclic(&restricted).unwrap();
    }

    let elapsed = start.elapsed();
    pass(7, &format!(
        "acyclicity, earlier-explained link targets, and per-reason out-neighborhoods hold \
         on golden and 500 random cases ({elapsed:?})"
    ));
}

#[test]
fn criterion_8_blocksworld_explanation() {
    let start = Instant::now();

    // The shipped fixtures must match the instance builder and simulator.
    assert_eq!(BLOCKS_LP, common::blocksworld::program_text(), "blocksworld.lp out of sync");
    assert_eq!(BLOCKS_ANS, common::blocksworld::answer_text(), "blocksworld.ans out of sync");

    let program = parse_program(BLOCKS_LP).unwrap();
    for rule in &program.rules {
        check_safety(rule).unwrap();
    }
    check_stratification(&program).unwrap();

    let answer = parse_answer_set(BLOCKS_ANS, &program).unwrap();
    let alpha = atom(&common::blocksworld::query_atom());
    assert!(!answer.contains(&alpha), "the query atom must be false in the answer set");

    let seeds: BTreeSet<Atom> = answer.iter().cloned().chain([alpha.clone()]).collect();
    let ground = instantiate(&program, &seeds, GroundingOptions::default()).unwrap();
    assert!(is_answer_set(&ground, &answer), "simulated plan must be an answer set");

    let wf = well_founded_derivation(&ground, &answer);
    let mas = minimal_assumption_set(&ground, &answer, &alpha, &wf);
    assert!(mas.is_empty(), "expected an empty assumption set, got {mas:?}");

    let (_, derivation) = assumption_derivation(&ground, &answer, &wf, &mas);
    let dag = build_dag(&derivation, &ground, &answer).unwrap();
    let restricted = restrict_reachable(&dag, &alpha).unwrap();
    check_acyclic(&restricted).unwrap();

    // The root is the query atom: present, false, with no incoming links.
    let root = Subject::Atom(alpha.clone());
    let root_vertex = restricted.vertices.get(&root).expect("query vertex");
    assert!(!root_vertex.truth);
    assert!(
        restricted.links.iter().all(|(_, to)| to != &root),
        "the query vertex must have no incoming links in the restricted DAG"
    );

    // It is explained by the executability constraint, linking into the
    // non-executability atom.
    let constraint_rule = match &root_vertex.reason {
        Reason::RequiredToFalsifyBody(id) => id,
        other => panic!("expected a constraint-like reason, got {other}"),
    };
    assert_eq!(constraint_rule.source_index, 7);
    let non_exec = Subject::Atom(atom(&format!(
        "non_exec((\"putdown\",constant(\"a\")),0)"
    )));
    assert!(
        restricted.links.contains(&(root.clone(), non_exec.clone())),
        "missing link from the query to its non-executability atom"
    );

    // Onward to the unexplained false holding-precondition atom.
    let holding = Subject::Atom(atom("h(holding(constant(\"a\")),0)"));
    assert!(
        restricted.links.contains(&(non_exec.clone(), holding.clone())),
        "missing link from non-executability to the holding precondition"
    );
    let holding_vertex = restricted.vertices.get(&holding).expect("holding vertex");
    assert!(!holding_vertex.truth);
    assert_eq!(holding_vertex.reason, Reason::InitialWellFounded);
    assert!(restricted.out_neighbors(&holding).is_empty(), "the precondition atom is a sink");

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    pass(8, &format!(
        "query explained by the executability constraint via non_exec down to the false \
         holding precondition; acyclic restricted DAG ({elapsed:?})"
    ));
}

#[test]
fn criterion_9_byte_determinism() {
    let reach_program = std::path::PathBuf::from("data/reachability.lp");
    let reach_answer = std::path::PathBuf::from("data/reachability.ans");
    let blocks_program = std::path::PathBuf::from("data/blocksworld.lp");
    let blocks_answer = std::path::PathBuf::from("data/blocksworld.ans");

    for format in [OutputFormat::Dot, OutputFormat::Json, OutputFormat::Trace] {
        let mut config = RunConfig::new(reach_program.clone(), "arc(a,b)");
        config.answer_set = Some(reach_answer.clone());
        config.format = format;
        let first = run(&config).unwrap();
        let second = run(&config).unwrap();
        assert_eq!(first, second, "{format} output must be byte-identical");
        assert!(!first.is_empty());
    }

    let mut config = RunConfig::new(blocks_program, common::blocksworld::query_atom());
    config.answer_set = Some(blocks_answer);
    config.format = OutputFormat::Dot;
    let first = run(&config).unwrap();
    let second = run(&config).unwrap();
    assert_eq!(first, second);

    pass(9, "dot, json and trace outputs are byte-identical across runs");
}

/// Regenerates the Blocksworld fixtures from the instance builder. Run with
/// `cargo test --test acceptance -- --ignored regenerate` after changing the
/// instance.
#[test]
#[ignore]
fn regenerate_blocksworld_fixtures() {
    std::fs::write("data/blocksworld.lp", common::blocksworld::program_text()).unwrap();
    std::fs::write("data/blocksworld.ans", common::blocksworld::answer_text()).unwrap();
}
