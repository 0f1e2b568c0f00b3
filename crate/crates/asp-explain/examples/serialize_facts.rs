//! Export the explanation problem as a ground fact base (atoms, truth
//! values, rule structure, aggregates), suitable for differential testing
//! against meta-programming encodings in an external ASP system.
//!
//! Run with: `cargo run --example serialize_facts`

use asp_explain::explain::well_founded_derivation;
use asp_explain::ground::{instantiate, GroundingOptions};
use asp_explain::parse::{parse_answer_set, parse_ground_atom, parse_program};
use asp_explain::pipeline::export_serialized_facts;

fn main() {
    let program = parse_program(include_str!("../data/reachability.lp")).unwrap();
    let answer = parse_answer_set(include_str!("../data/reachability.ans"), &program).unwrap();
    let alpha = parse_ground_atom("arc(a,b)").unwrap();
    let seeds = answer.iter().cloned().chain([alpha.clone()]).collect();
    let ground = instantiate(&program, &seeds, GroundingOptions::default()).unwrap();
    let wf = well_founded_derivation(&ground, &answer);

    print!("{}", export_serialized_facts(&ground, &answer, &alpha, &wf));
}
