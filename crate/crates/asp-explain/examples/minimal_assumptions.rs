//! Minimal assumption sets: the smallest sets of false atoms that must be
//! assumed outright for the derivation to reconstruct the answer set,
//! preferring sets that avoid the query atom.
//!
//! Run with: `cargo run --example minimal_assumptions`

use asp_explain::explain::{
    enumerate_assumption_sets, is_assumption_set, minimal_assumption_set, well_founded_derivation,
};
use asp_explain::ground::{instantiate, GroundingOptions};
use asp_explain::parse::{parse_answer_set, parse_ground_atom, parse_program};
use asp_explain::semantics::Interpretation;

fn main() {
    let program = parse_program(include_str!("../data/reachability.lp")).unwrap();
    let answer = parse_answer_set(include_str!("../data/reachability.ans"), &program).unwrap();
    let ground = instantiate(&program, &answer, GroundingOptions::default()).unwrap();
    let wf = well_founded_derivation(&ground, &answer);

    let alpha = parse_ground_atom("arc(a,b)").unwrap();
    let mas = minimal_assumption_set(&ground, &answer, &alpha, &wf);
    println!("minimal assumption set for {alpha}: {} atoms", mas.len());
    assert!(is_assumption_set(&mas, &ground, &answer, &wf));

    // A program where nothing can be inferred false: with the even negation
    // cycle below, assuming either b or c unlocks the whole derivation.
    let program = parse_program("a :- not b. a :- not c. b :- not a. c :- not a.").unwrap();
    let answer: Interpretation = [parse_ground_atom("a").unwrap()].into_iter().collect();
    let ground = instantiate(&program, &answer, GroundingOptions::default()).unwrap();
    let wf = well_founded_derivation(&ground, &answer);
    let alpha = parse_ground_atom("a").unwrap();
    println!("\nnegation-cycle program, query {alpha}:");
    for (i, x) in enumerate_assumption_sets(&ground, &answer, &alpha, &wf, 5)
        .iter()
        .enumerate()
    {
        let atoms: Vec<String> = x.iter().map(|a| a.to_string()).collect();
        println!("  optimum {}: {{{}}}", i + 1, atoms.join(", "));
    }
}
