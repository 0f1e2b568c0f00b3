//! Explainable planning: why can block a not be put down at time 0?
//!
//! The program models a two-block world with action effects, inertia and
//! executability; the answer set executes the optimal plan unstack(a,b),
//! putdown(a), pickup(b), stack(b,a). The query asks about an action that
//! does not occur, and the explanation walks from the executability
//! constraint to the violated precondition.
//!
//! Run with: `cargo run --example blocksworld_plan`

use asp_explain::pipeline::{run, OutputFormat, RunConfig};

fn main() {
    let mut config = RunConfig::new(
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/blocksworld.lp"),
        r#"occurs(("putdown",constant("a")),0)"#,
    );
    config.answer_set = Some(
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/blocksworld.ans").into(),
    );

    config.format = OutputFormat::Trace;
    let trace = run(&config).expect("pipeline runs");
    println!("derivation for the query (trace excerpt):");
    for line in trace
        .lines()
        .filter(|l| l.contains("putdown") || l.contains("holding"))
    {
        println!("  {line}");
    }

    config.format = OutputFormat::Dot;
    let dot = run(&config).expect("pipeline runs");
    println!("\nexplanation DAG restricted to the query:");
    print!("{dot}");
}
