//! Check interpretations against a program: satisfaction, the reduct, the
//! answer-set test, and brute-force enumeration on a small program.
//!
//! Run with: `cargo run --example check_answer_set`

use std::collections::BTreeSet;

use asp_explain::ground::{instantiate, GroundingOptions};
use asp_explain::parse::{parse_answer_set, parse_program};
use asp_explain::semantics::{is_answer_set, oracle_answer_sets, reduct, satisfies_program};

fn main() {
    let program = parse_program(include_str!("../data/reachability.lp")).unwrap();
    let answer = parse_answer_set(include_str!("../data/reachability.ans"), &program).unwrap();
    let ground = instantiate(&program, &answer, GroundingOptions::default()).unwrap();

    println!("models the program: {}", satisfies_program(&answer, &ground));
    println!("is an answer set:   {}", is_answer_set(&ground, &answer));
    println!("reduct size:        {} rules", reduct(&ground, &answer).len());

    // The empty interpretation leaves the facts unsatisfied.
    println!(
        "empty set is an answer set: {}",
        is_answer_set(&ground, &BTreeSet::new())
    );

    // Exhaustive enumeration on a program with a small base.
    let tiny = parse_program("0 {rain} 1. wet :- rain. :- wet, not rain.").unwrap();
    let tiny_ground = instantiate(&tiny, &BTreeSet::new(), GroundingOptions::default()).unwrap();
    let all = oracle_answer_sets(&tiny_ground, 20).unwrap();
    println!("\nanswer sets of the rain program:");
    for a in all {
        let atoms: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        println!("  {{{}}}", atoms.join(", "));
    }
}
