//! Shared test support: a seeded generator for small ground programs with
//! stratified aggregates, and the Blocksworld planning instance with an
//! independent plan simulator.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random ground program over 0-ary atoms, layered so that aggregates only
/// look downward (stratified by construction): layer-1 heads take positive
/// bodies from layer 1 only, aggregates range over layer-1 atoms and only
/// appear in layer-2 (or constraint) bodies.
pub fn random_ground_program(rng: &mut ChaCha8Rng) -> String {
    let n_atoms: usize = rng.gen_range(3..=8);
    let atoms: Vec<String> = (0..n_atoms).map(|i| format!("a{i}")).collect();
    let split = n_atoms / 2 + 1;
    let layer1 = &atoms[..split];

    let pick = |rng: &mut ChaCha8Rng, pool: &[String]| pool[rng.gen_range(0..pool.len())].clone();
    let cmp_ops = ["=", "!=", "<", "<=", ">", ">="];

    let mut statements = Vec::new();
    let n_rules = rng.gen_range(1..=12);
    for _ in 0..n_rules {
        let roll = rng.gen_range(0..100);
        if roll < 20 {
            statements.push(format!("{}.", pick(rng, &atoms)));
        } else if roll < 50 {
            // Normal rule; layer-1 heads keep their positive body in layer 1.
            let head = pick(rng, &atoms);
            let head_in_layer1 = layer1.contains(&head);
            let n_body = rng.gen_range(1..=3);
            let mut body = Vec::new();
            for _ in 0..n_body {
                if rng.gen_bool(0.4) {
                    body.push(format!("not {}", pick(rng, &atoms)));
                } else if head_in_layer1 {
                    body.push(pick(rng, layer1));
                } else {
                    body.push(pick(rng, &atoms));
                }
            }
            statements.push(format!("{} :- {}.", head, body.join(", ")));
        } else if roll < 65 {
            // Constraint, occasionally with an aggregate.
            let n_body = rng.gen_range(1..=2);
            let mut body = Vec::new();
            for _ in 0..n_body {
                if rng.gen_bool(0.5) {
                    body.push(format!("not {}", pick(rng, &atoms)));
                } else {
                    body.push(pick(rng, &atoms));
                }
            }
            if rng.gen_bool(0.4) {
                body.push(random_aggregate(rng, layer1, &cmp_ops));
            }
            statements.push(format!(":- {}.", body.join(", ")));
        } else if roll < 85 {
            // Choice rule over one layer.
            let pool: &[String] = if rng.gen_bool(0.5) { layer1 } else { &atoms };
            let n_heads = rng.gen_range(1..=3.min(pool.len()));
            let mut heads: Vec<String> = Vec::new();
            while heads.len() < n_heads {
                let a = pick(rng, pool);
                if !heads.contains(&a) {
                    heads.push(a);
                }
            }
            let in_layer1 = heads.iter().all(|h| layer1.contains(h));
            let lower = rng.gen_range(0..=heads.len());
            let upper = rng.gen_range(lower..=heads.len());
            let body = if rng.gen_bool(0.5) {
                let elem = if rng.gen_bool(0.4) {
                    format!("not {}", pick(rng, &atoms))
                } else if in_layer1 {
                    pick(rng, layer1)
                } else {
                    pick(rng, &atoms)
                };
                format!(" :- {elem}")
            } else {
                String::new()
            };
            statements.push(format!("{} {{{}}} {}{}.", lower, heads.join("; "), upper, body));
        } else {
            // Aggregate rule with a layer-2 head (or a constraint when the
            // program is too small for a second layer).
            let agg = random_aggregate(rng, layer1, &cmp_ops);
            if split < atoms.len() {
                let head = pick(rng, &atoms[split..]);
                let extra = if rng.gen_bool(0.4) {
                    format!(", not {}", pick(rng, &atoms))
                } else {
                    String::new()
                };
                statements.push(format!("{head} :- {agg}{extra}."));
            } else {
                statements.push(format!(":- {agg}."));
            }
        }
    }
    statements.join("\n") + "\n"
}

fn random_aggregate(rng: &mut ChaCha8Rng, layer1: &[String], cmp_ops: &[&str]) -> String {
    let weight = [-1, 1, 2][rng.gen_range(0..3)];
    let cond = &layer1[rng.gen_range(0..layer1.len())];
    let op = cmp_ops[rng.gen_range(0..cmp_ops.len())];
    let guard = rng.gen_range(-1..=2);
    format!("#sum{{{weight} : {cond}}} {op} {guard}")
}

/// The Blocksworld planning instance: two blocks, four time steps, the
/// optimal plan unstack(a,b), putdown(a), pickup(b), stack(b,a).
pub mod blocksworld {
    use std::collections::BTreeSet;

    pub const STEPS: usize = 4;

    fn block(b: &str) -> String {
        format!("constant(\"{b}\")")
    }

    fn on(x: &str, y: &str) -> String {
        format!("on({},{})", block(x), block(y))
    }

    fn on_table(x: &str) -> String {
        format!("onTable({})", block(x))
    }

    fn clear(x: &str) -> String {
        format!("clear({})", block(x))
    }

    fn holding(x: &str) -> String {
        format!("holding({})", block(x))
    }

    const HAND_EMPTY: &str = "handEmpty";

    pub struct ActionSpec {
        pub term: String,
        pub pre: Vec<String>,
        pub eff_true: Vec<String>,
        pub eff_false: Vec<String>,
    }

    pub fn actions() -> Vec<ActionSpec> {
        let mut out = Vec::new();
        for (x, y) in [("a", "b"), ("b", "a")] {
            out.push(ActionSpec {
                term: format!("(\"unstack\",{},{})", block(x), block(y)),
                pre: vec![clear(x), on(x, y), HAND_EMPTY.into()],
                eff_true: vec![holding(x), clear(y)],
                eff_false: vec![clear(x), on(x, y), HAND_EMPTY.into()],
            });
            out.push(ActionSpec {
                term: format!("(\"stack\",{},{})", block(x), block(y)),
                pre: vec![clear(y), holding(x)],
                eff_true: vec![clear(x), on(x, y), HAND_EMPTY.into()],
                eff_false: vec![clear(y), holding(x)],
            });
        }
        for x in ["a", "b"] {
            out.push(ActionSpec {
                term: format!("(\"pickup\",{})", block(x)),
                pre: vec![clear(x), on_table(x), HAND_EMPTY.into()],
                eff_true: vec![holding(x)],
                eff_false: vec![on_table(x), clear(x), HAND_EMPTY.into()],
            });
            out.push(ActionSpec {
                term: format!("(\"putdown\",{})", block(x)),
                pre: vec![holding(x)],
                eff_true: vec![clear(x), on_table(x), HAND_EMPTY.into()],
                eff_false: vec![holding(x)],
            });
        }
        out
    }

    pub fn initial_state() -> Vec<String> {
        vec![on("a", "b"), on_table("b"), clear("a"), HAND_EMPTY.into()]
    }

    /// (action term, time) pairs of the optimal plan.
    pub fn plan() -> Vec<(String, usize)> {
        vec![
            (format!("(\"unstack\",{},{})", block("a"), block("b")), 0),
            (format!("(\"putdown\",{})", block("a")), 1),
            (format!("(\"pickup\",{})", block("b")), 2),
            (format!("(\"stack\",{},{})", block("b"), block("a")), 3),
        ]
    }

    pub fn goal_fluent() -> String {
        on("b", "a")
    }

    pub fn query_atom() -> String {
        format!("occurs((\"putdown\",{}),0)", block("a"))
    }

    fn fact_atoms() -> Vec<String> {
        let mut facts = Vec::new();
        for t in 0..STEPS {
            facts.push(format!("step({t})"));
        }
        for action in actions() {
            let a = &action.term;
            facts.push(format!("action(action({a}))"));
            for f in &action.pre {
                facts.push(format!("precondition(action({a}),{f},value({f},true))"));
            }
            for f in &action.eff_true {
                facts.push(format!(
                    "postcondition(action({a}),effect(unconditional),{f},value({f},true))"
                ));
            }
            for f in &action.eff_false {
                facts.push(format!(
                    "postcondition(action({a}),effect(unconditional),{f},value({f},false))"
                ));
            }
        }
        for f in initial_state() {
            facts.push(format!("h({f},0)"));
        }
        facts
    }

    pub fn program_text() -> String {
        let mut out = String::new();
        out.push_str("% Effects of occurring actions, inertia, executability, and the goal.\n");
        out.push_str("h(X,T+1) :- action(action(A)), occurs(A,T), postcondition(action(A),effect(unconditional),X,value(X,true)).\n");
        out.push_str("-h(X,T+1) :- action(action(A)), occurs(A,T), postcondition(action(A),effect(unconditional),X,value(X,false)).\n");
        out.push_str("h(X,T+1) :- h(X,T), step(T), not -h(X,T+1).\n");
        out.push_str("-h(X,T+1) :- -h(X,T), step(T), not h(X,T+1).\n");
        out.push_str("non_exec(A,T) :- action(action(A)), step(T), not h(X,T), precondition(action(A),X,value(X,true)).\n");
        out.push_str("non_exec(A,T) :- action(action(A)), step(T), not -h(X,T), precondition(action(A),X,value(X,false)).\n");
        out.push_str(":- action(action(A)), occurs(A,T), non_exec(A,T).\n");
        let occurs: Vec<String> = actions()
            .iter()
            .map(|a| format!("occurs({},T)", a.term))
            .collect();
        out.push_str(&format!("1 {{{}}} 1 :- step(T).\n", occurs.join("; ")));
        out.push_str(&format!(":- not h({},{}).\n", goal_fluent(), STEPS));
        for fact in fact_atoms() {
            out.push_str(&fact);
            out.push_str(".\n");
        }
        out
    }

    /// Simulates the plan and returns the answer-set file text: facts, the
    /// occurrences, the true and explicitly false fluents per time, and the
    /// non-executable action/time pairs.
    pub fn answer_text() -> String {
        let actions = actions();
        let plan = plan();
        let mut true_at: Vec<BTreeSet<String>> = vec![initial_state().into_iter().collect()];
        let mut false_at: Vec<BTreeSet<String>> = vec![BTreeSet::new()];
        for t in 0..STEPS {
            let (term, time) = &plan[t];
            assert_eq!(*time, t);
            let action = actions.iter().find(|a| &a.term == term).unwrap();
            for f in &action.pre {
                assert!(true_at[t].contains(f), "plan step {t} not executable: {f} not true");
            }
            let eff_true: BTreeSet<String> = action.eff_true.iter().cloned().collect();
            let eff_false: BTreeSet<String> = action.eff_false.iter().cloned().collect();
            let next_true: BTreeSet<String> = eff_true
                .iter()
                .cloned()
                .chain(true_at[t].difference(&eff_false).cloned())
                .collect();
            let next_false: BTreeSet<String> = eff_false
                .iter()
                .cloned()
                .chain(false_at[t].difference(&eff_true).cloned())
                .collect();
            assert!(next_true.is_disjoint(&next_false));
            true_at.push(next_true);
            false_at.push(next_false);
        }
        assert!(true_at[STEPS].contains(&goal_fluent()), "plan misses the goal");

        let mut lines: Vec<String> = fact_atoms();
        for (term, t) in &plan {
            lines.push(format!("occurs({term},{t})"));
        }
        for (t, fluents) in true_at.iter().enumerate() {
            for f in fluents {
                if t > 0 || !initial_state().contains(f) {
                    lines.push(format!("h({f},{t})"));
                }
            }
        }
        for (t, fluents) in false_at.iter().enumerate() {
            for f in fluents {
                lines.push(format!("-h({f},{t})"));
            }
        }
        for action in &actions {
            for t in 0..STEPS {
                if action.pre.iter().any(|f| !true_at[t].contains(f)) {
                    lines.push(format!("non_exec({},{t})", action.term));
                }
            }
        }
        lines.sort();
        lines.dedup();
        lines.join("\n") + "\n"
    }
}
