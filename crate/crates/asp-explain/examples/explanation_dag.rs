//! The full explanation pipeline, by hand: derivation records, the DAG,
//! restriction to the query atom, and DOT output.
//!
//! Run with: `cargo run --example explanation_dag`

use asp_explain::dag::{build_dag, check_acyclic, restrict_reachable, to_dot};
use asp_explain::explain::{
    assumption_derivation, minimal_assumption_set, well_founded_derivation,
};
use asp_explain::ground::{instantiate, GroundingOptions};
use asp_explain::parse::{parse_answer_set, parse_ground_atom, parse_program};

fn main() {
    let program = parse_program(include_str!("../data/reachability.lp")).unwrap();
    let answer = parse_answer_set(include_str!("../data/reachability.ans"), &program).unwrap();
    let ground = instantiate(&program, &answer, GroundingOptions::default()).unwrap();
    let wf = well_founded_derivation(&ground, &answer);

    let alpha = parse_ground_atom("arc(a,b)").unwrap();
    let assumptions = minimal_assumption_set(&ground, &answer, &alpha, &wf);
    let (_, derivation) = assumption_derivation(&ground, &answer, &wf, &assumptions);

    println!("derivation ({} records):", derivation.records.len());
    print!("{}", derivation.trace());

    let dag = build_dag(&derivation, &ground, &answer).unwrap();
    let restricted = restrict_reachable(&dag, &alpha).unwrap();
    check_acyclic(&restricted).expect("explanation DAGs are acyclic");

    println!(
        "\nwhy is {alpha} false? ({} vertices, {} links)",
        restricted.vertices.len(),
        restricted.links.len()
    );
    print!("{}", to_dot(&restricted));
}
