//! Explanation DAGs: built from a derivation, restricted to the atoms
//! reachable from the query, checked for acyclicity, and serialized to DOT
//! and JSON. Both text formats are byte-deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::Atom;
use crate::explain::{Derivation, Reason, ReasonRule, Subject};
use crate::ground::{AggId, GroundProgram, GroundRule, RuleId};
use crate::semantics::Interpretation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagVertex {
    pub subject: Subject,
    pub truth: bool,
    pub reason: Reason,
    pub index: usize,
}

/// Vertices and directed links of an explanation graph. Every link points
/// from a vertex to a premise explained strictly earlier (or at index 0).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExplanationDag {
    pub vertices: BTreeMap<Subject, DagVertex>,
    pub links: BTreeSet<(Subject, Subject)>,
}

impl ExplanationDag {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, subject: &Subject) -> bool {
        self.vertices.contains_key(subject)
    }

    /// Vertices in output order: by derivation index, then by text.
    pub fn sorted_vertices(&self) -> Vec<&DagVertex> {
        let mut out: Vec<&DagVertex> = self.vertices.values().collect();
        out.sort_by(|a, b| {
            (a.index, a.subject.to_string()).cmp(&(b.index, b.subject.to_string()))
        });
        out
    }

    /// Links in output order: by source index and text, then target index
    /// and text.
    pub fn sorted_links(&self) -> Vec<(&Subject, &Subject)> {
        let mut out: Vec<(&Subject, &Subject)> = self.links.iter().map(|(s, t)| (s, t)).collect();
        let key = |s: &Subject| {
            let index = self.vertices.get(s).map(|v| v.index).unwrap_or(usize::MAX);
            (index, s.to_string())
        };
        out.sort_by(|a, b| (key(a.0), key(a.1)).cmp(&(key(b.0), key(b.1))));
        out
    }

    pub fn out_neighbors(&self, subject: &Subject) -> Vec<&Subject> {
        self.links
            .iter()
            .filter(|(s, _)| s == subject)
            .map(|(_, t)| t)
            .collect()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DagError {
    #[error("vertex {vertex}: rule {rule} has no body element explained before index {index}; the derivation is inconsistent")]
    MissingPremise {
        vertex: String,
        rule: String,
        index: usize,
    },
    #[error("vertex {vertex}: link target {target} has no derivation record")]
    MissingTarget { vertex: String, target: String },
    #[error("atom {atom} is not a vertex of the DAG")]
    NotAVertex { atom: String },
}

/// Builds the explanation DAG for a derivation.
///
/// Links follow the reason of each vertex: supported atoms point at every
/// element of the supporting rule's body; an atom false by lack of support
/// points, for each rule it heads, at exactly one body element falsified
/// earlier (smallest index, ties by text); constraint-like falsities point
/// at the head atoms and the rest of the body; choice falsities point at the
/// true head atoms and the body. Aggregates always point at the instances of
/// their condition in the base. Assumptions and initial well-founded
/// falsities are sinks.
pub fn build_dag(
    derivation: &Derivation,
    ground: &GroundProgram,
    a: &Interpretation,
) -> Result<ExplanationDag, DagError> {
    let mut dag = ExplanationDag::default();
    for record in &derivation.records {
        dag.vertices.insert(
            record.subject.clone(),
            DagVertex {
                subject: record.subject.clone(),
                truth: record.truth,
                reason: record.reason.clone(),
                index: record.index,
            },
        );
    }

    let rules_by_id: BTreeMap<&RuleId, &GroundRule> =
        ground.rules.iter().map(|r| (&r.id, r)).collect();
    let mut head_rules: BTreeMap<&Atom, Vec<&GroundRule>> = BTreeMap::new();
    for rule in &ground.rules {
        for atom in rule.head.atoms() {
            head_rules.entry(atom).or_default().push(rule);
        }
    }

    let index_of = |subject: &Subject| dag.vertices.get(subject).map(|v| v.index);
    let truth_of = |subject: &Subject| dag.vertices.get(subject).map(|v| v.truth);

    let mut links: BTreeSet<(Subject, Subject)> = BTreeSet::new();
    let link = |from: &Subject, to: Subject, links: &mut BTreeSet<(Subject, Subject)>| {
        links.insert((from.clone(), to.clone()));
    };

    let body_subjects = |rule: &GroundRule| -> Vec<Subject> {
        rule.pos_body
            .iter()
            .cloned()
            .map(Subject::Atom)
            .chain(rule.neg_body.iter().cloned().map(Subject::Atom))
            .chain(rule.agg_body.iter().cloned().map(Subject::Aggregate))
            .collect()
    };

    for record in &derivation.records {
        let vertex = &record.subject;
        // Aggregates link to the instances of their condition, whatever
        // decided them.
        if let Subject::Aggregate(id) = vertex {
            for inst in &ground.aggregate(id).instances {
                link(vertex, Subject::Atom(inst.atom.clone()), &mut links);
            }
            continue;
        }
        match &record.reason {
            Reason::Assumption | Reason::InitialWellFounded => {}
            Reason::Support(ReasonRule::Rule(id)) => {
                if let Some(rule) = rules_by_id.get(id) {
                    for target in body_subjects(rule) {
                        ensure_recorded(&target, vertex, &dag)?;
                        link(vertex, target, &mut links);
                    }
                }
            }
            // Atom records never carry aggregate support.
            Reason::Support(ReasonRule::Aggregate(_)) => {}
            Reason::LackOfSupport => {
                for rule in head_rules
                    .get(match vertex {
                        Subject::Atom(a) => a,
                        Subject::Aggregate(_) => unreachable!(),
                    })
                    .map(|v| v.as_slice())
                    .unwrap_or(&[])
                {
                    // One link per rule: the element falsified first.
                    let mut best: Option<(usize, String, Subject)> = None;
                    let consider = |target: Subject, want_truth: bool,
                                        best: &mut Option<(usize, String, Subject)>| {
                        if truth_of(&target) != Some(want_truth) {
                            return;
                        }
                        let Some(index) = index_of(&target) else { return };
                        if index >= record.index {
                            return;
                        }
                        let key = (index, target.to_string());
                        if best.as_ref().map(|(i, t, _)| (*i, t.clone()) > key).unwrap_or(true) {
                            *best = Some((key.0, key.1, target));
                        }
                    };
                    for atom in &rule.pos_body {
                        consider(Subject::Atom(atom.clone()), false, &mut best);
                    }
                    for atom in &rule.neg_body {
                        consider(Subject::Atom(atom.clone()), true, &mut best);
                    }
                    for id in &rule.agg_body {
                        consider(Subject::Aggregate(id.clone()), false, &mut best);
                    }
                    match best {
                        Some((_, _, target)) => link(vertex, target, &mut links),
                        None => {
                            return Err(DagError::MissingPremise {
                                vertex: vertex.to_string(),
                                rule: rule.id.to_string(),
                                index: record.index,
                            })
                        }
                    }
                }
            }
            Reason::RequiredToFalsifyBody(id) => {
                if let Some(rule) = rules_by_id.get(id) {
                    for head_atom in rule.head.atoms() {
                        let target = Subject::Atom(head_atom.clone());
                        ensure_recorded(&target, vertex, &dag)?;
                        link(vertex, target, &mut links);
                    }
                    for target in body_subjects(rule) {
                        if target == *vertex {
                            continue;
                        }
                        ensure_recorded(&target, vertex, &dag)?;
                        link(vertex, target, &mut links);
                    }
                }
            }
            Reason::ChoiceRule(id) => {
                if let Some(rule) = rules_by_id.get(id) {
                    for head_atom in rule.head.atoms() {
                        if a.contains(head_atom) {
                            let target = Subject::Atom(head_atom.clone());
                            ensure_recorded(&target, vertex, &dag)?;
                            link(vertex, target, &mut links);
                        }
                    }
                    for target in body_subjects(rule) {
                        ensure_recorded(&target, vertex, &dag)?;
                        link(vertex, target, &mut links);
                    }
                }
            }
        }
    }

    dag.links = links;
    Ok(dag)
}

fn ensure_recorded(
    target: &Subject,
    vertex: &Subject,
    dag: &ExplanationDag,
) -> Result<(), DagError> {
    if dag.vertices.contains_key(target) {
        Ok(())
    } else {
        Err(DagError::MissingTarget {
            vertex: vertex.to_string(),
            target: target.to_string(),
        })
    }
}

/// The induced subgraph on the vertices reachable from `alpha` (included).
pub fn restrict_reachable(dag: &ExplanationDag, alpha: &Atom) -> Result<ExplanationDag, DagError> {
    let root = Subject::Atom(alpha.clone());
    if !dag.contains(&root) {
        return Err(DagError::NotAVertex {
            atom: alpha.to_string(),
        });
    }
    let mut reachable: BTreeSet<Subject> = BTreeSet::new();
    let mut queue = VecDeque::new();
    reachable.insert(root.clone());
    queue.push_back(root);
    while let Some(subject) = queue.pop_front() {
        for (from, to) in &dag.links {
            if from == &subject && reachable.insert(to.clone()) {
                queue.push_back(to.clone());
            }
        }
    }
    Ok(ExplanationDag {
        vertices: dag
            .vertices
            .iter()
            .filter(|(s, _)| reachable.contains(s))
            .map(|(s, v)| (s.clone(), v.clone()))
            .collect(),
        links: dag
            .links
            .iter()
            .filter(|(s, t)| reachable.contains(s) && reachable.contains(t))
            .cloned()
            .collect(),
    })
}

/// Topological check; on failure returns a witness cycle, first vertex
/// repeated at the end.
pub fn check_acyclic(dag: &ExplanationDag) -> Result<(), Vec<String>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        White,
        Grey,
        Black,
    }
    let mut marks: BTreeMap<&Subject, Mark> =
        dag.vertices.keys().map(|s| (s, Mark::White)).collect();
    let mut succs: BTreeMap<&Subject, Vec<&Subject>> = BTreeMap::new();
    for (from, to) in &dag.links {
        succs.entry(from).or_default().push(to);
    }
    for start in dag.vertices.keys() {
        if marks[start] != Mark::White {
            continue;
        }
        // DFS with explicit stack; a grey successor closes a cycle.
        let mut stack: Vec<(&Subject, usize)> = vec![(start, 0)];
        marks.insert(start, Mark::Grey);
        while let Some((v, i)) = stack.pop() {
            let vs = succs.get(v).map(|s| s.as_slice()).unwrap_or(&[]);
            if i < vs.len() {
                stack.push((v, i + 1));
                let w = vs[i];
                match marks[w] {
                    Mark::White => {
                        marks.insert(w, Mark::Grey);
                        stack.push((w, 0));
                    }
                    Mark::Grey => {
                        let mut cycle: Vec<String> =
                            stack.iter().map(|(s, _)| s.to_string()).collect();
                        if let Some(pos) = cycle.iter().position(|s| s == &w.to_string()) {
                            cycle.drain(..pos);
                        }
                        cycle.push(w.to_string());
                        return Err(cycle);
                    }
                    Mark::Black => {}
                }
            } else {
                marks.insert(v, Mark::Black);
            }
        }
    }
    Ok(())
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text: one node per vertex (false atoms labeled `not <atom>`) with the
/// reason tag, one edge per link; byte-deterministic.
pub fn to_dot(dag: &ExplanationDag) -> String {
    if dag.is_empty() {
        return "digraph explanation {}\n".to_string();
    }
    let mut out = String::from("digraph explanation {\n");
    for vertex in dag.sorted_vertices() {
        let id = vertex.subject.to_string();
        let label = match (&vertex.subject, vertex.truth) {
            (Subject::Atom(_), false) => format!("not {id}"),
            _ => id.clone(),
        };
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\", reason=\"{}\", index={}];\n",
            dot_escape(&id),
            dot_escape(&label),
            reason_tag(&vertex.reason),
            vertex.index
        ));
    }
    for (from, to) in dag.sorted_links() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            dot_escape(&from.to_string()),
            dot_escape(&to.to_string())
        ));
    }
    out.push_str("}\n");
    out
}

fn reason_tag(reason: &Reason) -> &'static str {
    match reason {
        Reason::Assumption => "assumption",
        Reason::InitialWellFounded => "initial_well_founded",
        Reason::Support(_) => "support",
        Reason::LackOfSupport => "lack_of_support",
        Reason::RequiredToFalsifyBody(_) => "required_to_falsify_body",
        Reason::ChoiceRule(_) => "choice_rule",
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonNode {
    id: String,
    truth: bool,
    reason: String,
    index: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonLink {
    source: String,
    target: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDag {
    nodes: Vec<JsonNode>,
    links: Vec<JsonLink>,
}

/// JSON text: `{"nodes":[{id,truth,reason,index}...],"links":[{source,target}...]}`,
/// arrays in the same order as the DOT output.
pub fn to_json(dag: &ExplanationDag) -> String {
    let doc = JsonDag {
        nodes: dag
            .sorted_vertices()
            .into_iter()
            .map(|v| JsonNode {
                id: v.subject.to_string(),
                truth: v.truth,
                reason: v.reason.to_string(),
                index: v.index,
            })
            .collect(),
        links: dag
            .sorted_links()
            .into_iter()
            .map(|(s, t)| JsonLink {
                source: s.to_string(),
                target: t.to_string(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("DAG serialization cannot fail")
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum JsonDagError {
    #[error("invalid DAG JSON: {0}")]
    Syntax(String),
    #[error("invalid subject `{0}`")]
    Subject(String),
    #[error("invalid reason `{0}`")]
    Reason(String),
}

fn parse_subject(text: &str) -> Result<Subject, JsonDagError> {
    let atom = crate::parse::parse_ground_atom(text)
        .map_err(|_| JsonDagError::Subject(text.to_string()))?;
    if let Some(ordinal) = atom
        .predicate
        .strip_prefix("agg")
        .and_then(|s| s.parse::<usize>().ok())
    {
        return Ok(Subject::Aggregate(AggId {
            ordinal,
            bindings: atom.args,
        }));
    }
    Ok(Subject::Atom(atom))
}

fn parse_rule_id(text: &str) -> Result<ReasonRule, JsonDagError> {
    let atom = crate::parse::parse_ground_atom(text)
        .map_err(|_| JsonDagError::Subject(text.to_string()))?;
    if let Some(ordinal) = atom
        .predicate
        .strip_prefix("agg")
        .and_then(|s| s.parse::<usize>().ok())
    {
        return Ok(ReasonRule::Aggregate(AggId {
            ordinal,
            bindings: atom.args,
        }));
    }
    if let Some(source_index) = atom
        .predicate
        .strip_prefix('r')
        .and_then(|s| s.parse::<usize>().ok())
    {
        return Ok(ReasonRule::Rule(RuleId {
            source_index,
            bindings: atom.args,
        }));
    }
    Err(JsonDagError::Subject(text.to_string()))
}

fn parse_reason(text: &str) -> Result<Reason, JsonDagError> {
    match text {
        "assumption" => return Ok(Reason::Assumption),
        "initial_well_founded" => return Ok(Reason::InitialWellFounded),
        "lack_of_support" => return Ok(Reason::LackOfSupport),
        _ => {}
    }
    let inner = text
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| JsonDagError::Reason(text.to_string()))?;
    let (tag, rule) = inner
        .split_once(", ")
        .ok_or_else(|| JsonDagError::Reason(text.to_string()))?;
    match tag {
        "support" => Ok(Reason::Support(parse_rule_id(rule)?)),
        "required_to_falsify_body" => match parse_rule_id(rule)? {
            ReasonRule::Rule(id) => Ok(Reason::RequiredToFalsifyBody(id)),
            ReasonRule::Aggregate(_) => Err(JsonDagError::Reason(text.to_string())),
        },
        "choice_rule" => match parse_rule_id(rule)? {
            ReasonRule::Rule(id) => Ok(Reason::ChoiceRule(id)),
            ReasonRule::Aggregate(_) => Err(JsonDagError::Reason(text.to_string())),
        },
        _ => Err(JsonDagError::Reason(text.to_string())),
    }
}

/// Parses the JSON produced by [`to_json`] back into a DAG value.
pub fn from_json(text: &str) -> Result<ExplanationDag, JsonDagError> {
    let doc: JsonDag =
        serde_json::from_str(text).map_err(|e| JsonDagError::Syntax(e.to_string()))?;
    let mut dag = ExplanationDag::default();
    for node in doc.nodes {
        let subject = parse_subject(&node.id)?;
        dag.vertices.insert(
            subject.clone(),
            DagVertex {
                subject,
                truth: node.truth,
                reason: parse_reason(&node.reason)?,
                index: node.index,
            },
        );
    }
    for link in doc.links {
        dag.links
            .insert((parse_subject(&link.source)?, parse_subject(&link.target)?));
    }
    Ok(dag)
}
