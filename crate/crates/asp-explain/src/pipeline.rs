//! The end-to-end pipeline: parse, ground, compute the well-founded
//! derivation, search minimal assumption sets, derive, build the DAG, and
//! emit the chosen artifact. Also the fact-base export used for
//! differential testing against meta-programming encodings.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::analysis::{check_safety, check_stratification};
use crate::ast::Atom;
use crate::dag::{build_dag, restrict_reachable, to_dot, to_json, DagError};
use crate::explain::{
    assumption_derivation, enumerate_assumption_sets, well_founded_derivation,
};
use crate::ground::{instantiate, GroundError, GroundProgram, GroundingMode, GroundingOptions};
use crate::parse::{parse_answer_set, parse_ground_atom, parse_program, ParseError};
use crate::semantics::{
    is_answer_set, oracle_answer_sets, satisfies_aggregate, Interpretation, ThreeValued,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Dot,
    Json,
    Trace,
    Facts,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OutputFormat::Dot => "dot",
            OutputFormat::Json => "json",
            OutputFormat::Trace => "trace",
            OutputFormat::Facts => "facts",
        };
        write!(f, "{s}")
    }
}

/// One pipeline invocation. When `answer_set` is `None`, the first answer
/// set found by the brute-force oracle is used (only viable for small
/// Herbrand bases, bounded by `oracle_cap`).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub program: PathBuf,
    pub answer_set: Option<PathBuf>,
    pub query: String,
    pub format: OutputFormat,
    pub count: usize,
    pub out: Option<PathBuf>,
    pub trust_answer_set: bool,
    pub extra_atoms: Vec<String>,
    pub arith_depth: usize,
    pub oracle_cap: usize,
}

impl RunConfig {
    pub fn new(program: impl Into<PathBuf>, query: impl Into<String>) -> Self {
        RunConfig {
            program: program.into(),
            answer_set: None,
            query: query.into(),
            format: OutputFormat::Dot,
            count: 1,
            out: None,
            trust_answer_set: false,
            extra_atoms: Vec::new(),
            arith_depth: 64,
            oracle_cap: 20,
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    /// Parse, safety, stratification, grounding, or I/O problems. Exit 1.
    #[error("{0}")]
    Input(String),
    /// The provided interpretation is not an answer set (or none exists).
    /// Exit 2.
    #[error("{0}")]
    AnswerSet(String),
    /// The query atom does not occur in the Herbrand base. Exit 3.
    #[error("query atom {0} is not in the Herbrand base")]
    QueryNotInBase(String),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Input(_) => 1,
            PipelineError::AnswerSet(_) => 2,
            PipelineError::QueryNotInBase(_) => 3,
        }
    }
}

impl From<ParseError> for PipelineError {
    fn from(e: ParseError) -> Self {
        PipelineError::Input(e.to_string())
    }
}

impl From<GroundError> for PipelineError {
    fn from(e: GroundError) -> Self {
        PipelineError::Input(e.to_string())
    }
}

impl From<DagError> for PipelineError {
    fn from(e: DagError) -> Self {
        PipelineError::Input(format!("internal explanation error: {e}"))
    }
}

impl From<std::io::Error> for PipelineError {
    fn from(e: std::io::Error) -> Self {
        PipelineError::Input(e.to_string())
    }
}

/// Runs the pipeline and returns the emitted text (also written to
/// `config.out` when set). With `count` greater than one, up to `count`
/// artifacts for distinct optimal assumption sets are emitted, separated by
/// a `---` line.
pub fn run(config: &RunConfig) -> Result<String, PipelineError> {
    if config.count == 0 {
        return Err(PipelineError::Input("--count must be at least 1".into()));
    }
    let program_text = std::fs::read_to_string(&config.program)?;
    let program = parse_program(&program_text)?;
    for rule in &program.rules {
        check_safety(rule).map_err(|e| PipelineError::Input(e.to_string()))?;
    }
    check_stratification(&program).map_err(|e| PipelineError::Input(e.to_string()))?;

    let alpha = parse_ground_atom(&config.query)
        .map_err(|e| PipelineError::Input(format!("invalid query atom: {e}")))?;
    let mut extras: BTreeSet<Atom> = BTreeSet::new();
    for text in &config.extra_atoms {
        let atom = parse_ground_atom(text)
            .map_err(|e| PipelineError::Input(format!("invalid extra atom `{text}`: {e}")))?;
        extras.insert(atom);
    }

    let options = GroundingOptions {
        mode: GroundingMode::Relevant,
        arith_depth: config.arith_depth,
    };

    let answer: Interpretation = match &config.answer_set {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            parse_answer_set(&text, &program)?
        }
        None => {
            let seeds: BTreeSet<Atom> =
                extras.iter().cloned().chain([alpha.clone()]).collect();
            let ground = instantiate(&program, &seeds, options)?;
            let all = oracle_answer_sets(&ground, config.oracle_cap)
                .map_err(|e| PipelineError::Input(e.to_string()))?;
            all.into_iter().next().ok_or_else(|| {
                PipelineError::AnswerSet("the program has no answer set".into())
            })?
        }
    };

    // The query atom must occur in the base as grounded from the answer set
    // alone; it is then seeded so the explanation can refer to it.
    let seeds_without_alpha: BTreeSet<Atom> =
        answer.iter().cloned().chain(extras.iter().cloned()).collect();
    let pre_ground = instantiate(&program, &seeds_without_alpha, options)?;
    if !config.trust_answer_set && !is_answer_set(&pre_ground, &answer) {
        return Err(PipelineError::AnswerSet(
            "the provided interpretation is not an answer set of the program".into(),
        ));
    }
    if !pre_ground.base.contains(&alpha) {
        return Err(PipelineError::QueryNotInBase(alpha.to_string()));
    }

    let seeds: BTreeSet<Atom> = seeds_without_alpha
        .into_iter()
        .chain([alpha.clone()])
        .collect();
    let ground = instantiate(&program, &seeds, options)?;
    let wf = well_founded_derivation(&ground, &answer);

    let output = match config.format {
        OutputFormat::Facts => export_serialized_facts(&ground, &answer, &alpha, &wf),
        format => {
            let optima = enumerate_assumption_sets(&ground, &answer, &alpha, &wf, config.count);
            let mut blocks = Vec::new();
            for assumptions in &optima {
                let (_, derivation) = assumption_derivation(&ground, &answer, &wf, assumptions);
                let text = match format {
                    OutputFormat::Trace => derivation.trace(),
                    _ => {
                        let dag = build_dag(&derivation, &ground, &answer)?;
                        let restricted = restrict_reachable(&dag, &alpha)?;
                        match format {
                            OutputFormat::Dot => to_dot(&restricted),
                            OutputFormat::Json => {
                                let mut json = to_json(&restricted);
                                json.push('\n');
                                json
                            }
                            _ => unreachable!(),
                        }
                    }
                };
                blocks.push(text);
            }
            blocks.join("---\n")
        }
    };

    if let Some(path) = &config.out {
        std::fs::write(path, &output)?;
    }
    Ok(output)
}

/// Serializes the explanation problem as ground facts, one per line,
/// sorted: the base atoms with their truth in the answer set, the atoms
/// already false in the well-founded derivation, the query atom, and the
/// instantiated rules with their heads, bodies, choice bounds, and
/// aggregates (including the synthetic rules that explain aggregate truth
/// values instance by instance).
pub fn export_serialized_facts(
    ground: &GroundProgram,
    answer: &Interpretation,
    alpha: &Atom,
    wf: &ThreeValued,
) -> String {
    let mut lines: BTreeSet<String> = BTreeSet::new();

    for atom in &ground.base {
        lines.insert(format!("atom({atom})."));
        if answer.contains(atom) {
            lines.insert(format!("true({atom})."));
        } else {
            lines.insert(format!("false({atom})."));
        }
        if !wf.upper.contains(atom) {
            lines.insert(format!("explained_by({atom}, initial_well_founded)."));
        }
    }
    lines.insert(format!("explain({alpha})."));

    for rule in &ground.rules {
        let id = &rule.id;
        lines.insert(format!("rule({id})."));
        for atom in rule.head.atoms() {
            lines.insert(format!("head({id},{atom})."));
        }
        if let crate::ground::GroundHead::Choice { lower, upper, .. } = &rule.head {
            lines.insert(format!("choice({id},{lower},{upper})."));
        }
        for atom in &rule.pos_body {
            lines.insert(format!("pos_body({id},{atom})."));
        }
        for atom in &rule.neg_body {
            lines.insert(format!("neg_body({id},{atom})."));
        }
        for agg in &rule.agg_body {
            lines.insert(format!("pos_body({id},{agg})."));
        }
    }

    for (id, agg) in &ground.aggregates {
        lines.insert(format!("aggregate({id})."));
        let holds = satisfies_aggregate(answer, agg);
        if holds {
            // A true aggregate is derived by one synthetic rule whose body
            // fixes every instance to its truth value in the answer set.
            lines.insert(format!("true({id})."));
            lines.insert(format!("rule({id})."));
            lines.insert(format!("head({id},{id})."));
            for inst in &agg.instances {
                if answer.contains(&inst.atom) {
                    lines.insert(format!("pos_body({id},{})." , inst.atom));
                } else {
                    lines.insert(format!("neg_body({id},{})." , inst.atom));
                }
            }
        } else {
            // A false aggregate has one synthetic rule per instance; each
            // body turns false once the instance takes its answer-set value.
            lines.insert(format!("false({id})."));
            for inst in &agg.instances {
                let pair = format!("({id},{})", inst.atom);
                lines.insert(format!("rule({pair})."));
                lines.insert(format!("head({pair},{id})."));
                if answer.contains(&inst.atom) {
                    lines.insert(format!("neg_body({pair},{})." , inst.atom));
                } else {
                    lines.insert(format!("pos_body({pair},{})." , inst.atom));
                }
            }
        }
    }

    let mut out = String::new();
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}
