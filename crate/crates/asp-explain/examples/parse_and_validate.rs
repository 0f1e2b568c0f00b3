//! Parse a program, classify rule variables, and check aggregate
//! stratification.
//!
//! Run with: `cargo run --example parse_and_validate`

use asp_explain::analysis::{check_safety, check_stratification, dependency_graph};
use asp_explain::parse::parse_program;

fn main() {
    let text = include_str!("../data/reachability.lp");
    let program = parse_program(text).expect("program parses");
    println!("parsed {} statements:", program.rules.len());
    for rule in &program.rules {
        println!("  r{}: {}", rule.source_index, rule);
    }

    println!("\nsafety:");
    for rule in &program.rules {
        match check_safety(rule) {
            Ok(info) => {
                let classes: Vec<String> = info
                    .classes
                    .iter()
                    .map(|(v, c)| format!("{v}: {c:?}"))
                    .collect();
                if !classes.is_empty() {
                    println!("  r{}: {}", rule.source_index, classes.join(", "));
                }
            }
            Err(violation) => println!("  {violation}"),
        }
    }

    let graph = dependency_graph(&program);
    println!("\npredicate dependencies:");
    for (from, to, through_aggregate) in &graph.edges {
        let marker = if *through_aggregate { " (aggregate)" } else { "" };
        println!("  {from} -> {to}{marker}");
    }

    match check_stratification(&program) {
        Ok(()) => println!("\naggregates are stratified"),
        Err(err) => println!("\n{err}"),
    }

    // A program with recursion through an aggregate is rejected.
    let cyclic = parse_program("p :- #sum{1 : p} > 0.").unwrap();
    println!("\ncyclic example: {}", check_stratification(&cyclic).unwrap_err());
}
