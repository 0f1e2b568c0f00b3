//! Explain why a ground atom is true or false in an answer set.
//!
//! Given a program in a restricted ASP fragment (normal rules, constraints,
//! choice rules, stratified `#sum` aggregates, strong negation, comparisons,
//! integer arithmetic), one of its answer sets `A`, and a ground query atom,
//! this crate computes:
//!
//! * a cardinality-minimal *assumption set*: false atoms assumed outright so
//!   that easy-to-understand inferences reconstruct all of `A`;
//! * an *explaining derivation*: the ordered sequence of those inferences
//!   (true by support; false by lack of support, by a constraint-like rule,
//!   or by a choice rule);
//! * an acyclic *explanation DAG* linking every derived atom to the premises
//!   of its inference, restricted to the atoms reachable from the query.
//!
//! The pipeline is exposed both as a library (see the `examples/` directory
//! for one runnable example per capability) and as the thin `asp-explain`
//! binary.
//!
//! ```
//! use asp_explain::prelude::*;
//!
//! let program = parse_program("a. 1 {b; c} 1 :- a.").unwrap();
//! let answer = parse_answer_set("a b", &program).unwrap();
//! let ground = instantiate(&program, &answer, GroundingOptions::default()).unwrap();
//! assert!(is_answer_set(&ground, &answer));
//!
//! let wf = well_founded_derivation(&ground, &answer);
//! let query = parse_ground_atom("c").unwrap();
//! let assumptions = minimal_assumption_set(&ground, &answer, &query, &wf);
//! assert!(assumptions.is_empty());
//! ```

pub mod analysis;
pub mod ast;
pub mod dag;
pub mod explain;
pub mod ground;
pub mod parse;
pub mod pipeline;
pub mod semantics;

/// The commonly used types and functions in one import.
pub mod prelude {
    pub use crate::analysis::{check_safety, check_stratification, dependency_graph};
    pub use crate::ast::{Atom, Program, Rule, Term};
    pub use crate::dag::{
        build_dag, check_acyclic, from_json, restrict_reachable, to_dot, to_json, ExplanationDag,
    };
    pub use crate::explain::{
        assumption_derivation, enumerate_assumption_sets, explaining_derivation, explaining_step,
        is_assumption_set, minimal_assumption_set, well_founded_derivation, AssumptionSet,
        Derivation, Reason, Subject,
    };
    pub use crate::ground::{
        aggregate_instances, expand, herbrand_base, instantiate, GroundProgram, GroundingMode,
        GroundingOptions,
    };
    pub use crate::parse::{parse_answer_set, parse_ground_atom, parse_program};
    pub use crate::pipeline::{export_serialized_facts, run, OutputFormat, RunConfig};
    pub use crate::semantics::{
        eval_aggregate, eval_body, eval_literal, find_unfounded_set, infer_false,
        infer_true_by_support, is_answer_set, oracle_answer_sets, reduct, satisfies_program,
        Interpretation, ThreeValued, TruthValue,
    };
}
