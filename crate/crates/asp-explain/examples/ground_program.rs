//! Instantiate a program relative to its answer set and dump the ground
//! rules, the Herbrand base, and the aggregate instances.
//!
//! Run with: `cargo run --example ground_program`

use asp_explain::ground::{instantiate, GroundingOptions};
use asp_explain::parse::{parse_answer_set, parse_program};

fn main() {
    let program = parse_program(include_str!("../data/reachability.lp")).unwrap();
    let answer = parse_answer_set(include_str!("../data/reachability.ans"), &program).unwrap();

    let ground = instantiate(&program, &answer, GroundingOptions::default()).unwrap();
    println!("{} ground rules:", ground.rules.len());
    print!("{}", ground.dump());

    println!("\nHerbrand base ({} atoms):", ground.base.len());
    for atom in &ground.base {
        let truth = if answer.contains(atom) { "true" } else { "false" };
        println!("  {atom} [{truth}]");
    }

    for (id, agg) in &ground.aggregates {
        println!("\naggregate {id}: {agg}");
        for inst in &agg.instances {
            println!("  instance {} (weight {})", inst.atom, inst.weight);
        }
    }
}
