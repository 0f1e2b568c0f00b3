//! The well-founded derivation: the preprocessing fixpoint that decides as
//! much as possible before any assumptions are made.
//!
//! Run with: `cargo run --example well_founded`

use asp_explain::explain::well_founded_derivation;
use asp_explain::ground::{instantiate, GroundingOptions};
use asp_explain::parse::{parse_answer_set, parse_program};

fn main() {
    let program = parse_program(include_str!("../data/reachability.lp")).unwrap();
    let answer = parse_answer_set(include_str!("../data/reachability.ans"), &program).unwrap();
    let ground = instantiate(&program, &answer, GroundingOptions::default()).unwrap();

    let wf = well_founded_derivation(&ground, &answer);
    println!("true in the well-founded derivation:");
    for atom in &wf.lower {
        println!("  {atom}");
    }
    println!("\nundefined (need an explanation):");
    for atom in wf.upper.difference(&wf.lower) {
        println!("  {atom}");
    }
    println!("\nalready false (initial well-founded):");
    for atom in ground.base.difference(&wf.upper) {
        println!("  {atom}");
    }
}
