//! Three-valued evaluation and the inference rules that drive explanations:
//! true by support, false by lack of support / constraint-like rules /
//! choice rules, and unfounded sets.
//!
//! Run with: `cargo run --example three_valued_inference`

use asp_explain::ground::{instantiate, GroundingMode, GroundingOptions};
use asp_explain::parse::{parse_answer_set, parse_ground_atom, parse_program};
use asp_explain::semantics::{
    eval_aggregate, find_unfounded_set, infer_false, infer_true_by_support, Interpretation,
    ThreeValued,
};

fn main() {
    let program = parse_program(include_str!("../data/reachability.lp")).unwrap();
    let answer = parse_answer_set(include_str!("../data/reachability.ans"), &program).unwrap();
    // Full instantiation over all constants, so junk atoms like edge(a,a)
    // exist and can be explained away.
    let ground = instantiate(
        &program,
        &answer,
        GroundingOptions {
            mode: GroundingMode::Full,
            ..GroundingOptions::default()
        },
    )
    .unwrap();

    let everything_open = ThreeValued::new(Interpretation::new(), ground.base.clone());
    println!("at (empty, base):");
    let supported = infer_true_by_support(&everything_open, &ground, &answer);
    println!("  true by support: {} atoms, e.g.", supported.len());
    for (atom, rule) in supported.iter().take(3) {
        println!("    {atom} via {rule}");
    }
    let falsified = infer_false(&everything_open, &ground);
    println!("  inferred false: {} atoms", falsified.len());
    let unfounded = find_unfounded_set(&everything_open, &ground);
    println!("  greatest unfounded set has {} atoms, e.g.", unfounded.len());
    for atom in unfounded.iter().take(4) {
        println!("    {atom}");
    }

    // Aggregate evaluation across the three truth values.
    let agg = ground.aggregates.values().next().unwrap();
    let fail_ac = parse_ground_atom("fail(a,c)").unwrap();
    let cases = [
        ("undecided instance", ThreeValued::new(Interpretation::new(), [fail_ac.clone()].into())),
        ("instance true", ThreeValued::new([fail_ac.clone()].into(), [fail_ac.clone()].into())),
        ("no instances", ThreeValued::new(Interpretation::new(), Interpretation::new())),
    ];
    println!("\naggregate {}:", agg);
    for (label, tv) in cases {
        println!("  {label}: {:?}", eval_aggregate(agg, &tv));
    }
}
